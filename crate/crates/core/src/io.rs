//! Text formats for configurations and search reports.
//!
//! A configuration file is a header line `n N` followed by `N` rows of `n`
//! coordinates, each printed with 17 significant digits. Blank lines and lines
//! starting with `#` are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::config::{norm, PointConfig};
use crate::error::{Error, Result};
use crate::potential::PotentialSpec;
use crate::search::{gap_statistics_from_levels, LocalMinimumRecord, SearchReport};

/// Points whose norm is off by more than this are rejected on read.
pub const READ_NORM_TOLERANCE: f64 = 1e-9;
/// Norm deviations up to this are left alone so printed files read back unchanged.
const ROUNDING_SLACK: f64 = 1e-14;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Meaningful lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn format_config(config: &PointConfig) -> String {
    let mut s = format!("{} {}\n", config.dim(), config.len());
    for p in config.points() {
        let row: Vec<String> = p.iter().map(|x| format!("{x:.16e}")).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

fn parse_config_lines<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, last_line: usize) -> Result<PointConfig> {
    let (hl, header) = lines.next().ok_or_else(|| parse_err(last_line, "missing `n N` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, count] = fields[..] else {
        return Err(parse_err(hl, format!("expected `n N`, found `{header}`")));
    };
    let n: usize = n.parse().map_err(|_| parse_err(hl, format!("bad dimension `{n}`")))?;
    let count: usize = count.parse().map_err(|_| parse_err(hl, format!("bad point count `{count}`")))?;
    if n == 0 {
        return Err(parse_err(hl, "dimension must be positive"));
    }
    let mut coords = Vec::with_capacity(n * count);
    for index in 0..count {
        let (ln, row) = lines.next().ok_or_else(|| parse_err(last_line, format!("expected {count} rows, found {index}")))?;
        let values: Vec<f64> = row
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| parse_err(ln, format!("bad number `{t}`"))))
            .collect::<Result<_>>()?;
        if values.len() != n {
            return Err(parse_err(ln, format!("row {index} has {} coordinates, expected {n}", values.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(parse_err(ln, format!("row {index} has a non-finite coordinate")));
        }
        let r = norm(&values);
        if (r - 1.0).abs() > READ_NORM_TOLERANCE {
            return Err(Error::NotOnSphere { index, norm: r });
        }
        if (r - 1.0).abs() > ROUNDING_SLACK {
            coords.extend(values.iter().map(|v| v / r));
        } else {
            coords.extend(values);
        }
    }
    PointConfig::from_flat(n, coords)
}

pub fn parse_config(text: &str) -> Result<PointConfig> {
    let last = text.lines().count();
    let mut lines = content_lines(text);
    let config = parse_config_lines(&mut lines, last)?;
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "unexpected trailing content"));
    }
    Ok(config)
}

pub fn read_config(path: impl AsRef<Path>) -> Result<PointConfig> {
    parse_config(&fs::read_to_string(path)?)
}

pub fn write_config(config: &PointConfig, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_config(config))?;
    Ok(())
}

/// Prints a report as `key value` lines followed by one block per record.
pub fn format_report(report: &SearchReport) -> String {
    let mut s = String::from("# search report\n");
    let mut kv = |k: &str, v: String| writeln!(s, "{k} {v}").expect("writing to a String");
    kv("n", report.n.to_string());
    kv("N", report.count.to_string());
    kv("potential", report.potential.to_string());
    kv("trials", report.trials.to_string());
    kv("master_seed", report.master_seed.to_string());
    kv("gradient_tolerance", format!("{:e}", report.gradient_tolerance));
    kv("dedup_tolerance", format!("{:e}", report.dedup_tolerance));
    kv("unconverged", report.unconverged.to_string());
    kv("records", report.records.len().to_string());
    for (i, r) in report.records.iter().enumerate() {
        writeln!(s, "\nrecord {i}").expect("writing to a String");
        writeln!(s, "energy {:.16e}", r.energy).expect("writing to a String");
        writeln!(s, "occurrences {}", r.occurrences).expect("writing to a String");
        writeln!(s, "parameter_count {}", r.parameter_count).expect("writing to a String");
        writeln!(s, "balanced {}", r.balanced).expect("writing to a String");
        writeln!(s, "symmetry_order {}", r.symmetry_order).expect("writing to a String");
        writeln!(s, "max_inner_product {:.16e}", r.max_inner_product).expect("writing to a String");
        let seeds: Vec<String> = r.seeds.iter().map(u64::to_string).collect();
        writeln!(s, "seeds {}", seeds.join(" ")).expect("writing to a String");
        s.push_str("config\n");
        s.push_str(&format_config(&r.config));
    }
    s
}

struct Fields<'a, I: Iterator<Item = (usize, &'a str)>> {
    lines: I,
    last: usize,
}

impl<'a, I: Iterator<Item = (usize, &'a str)>> Fields<'a, I> {
    fn raw(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (ln, line) = self.lines.next().ok_or_else(|| parse_err(self.last, format!("missing `{key}`")))?;
        let (k, v) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        if k != key {
            return Err(parse_err(ln, format!("expected `{key}`, found `{k}`")));
        }
        Ok((ln, v.trim()))
    }

    fn get<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let (ln, v) = self.raw(key)?;
        v.parse().map_err(|_| parse_err(ln, format!("bad value `{v}` for `{key}`")))
    }
}

pub fn parse_report(text: &str) -> Result<SearchReport> {
    let mut f = Fields { lines: content_lines(text), last: text.lines().count() };
    let n = f.get("n")?;
    let count = f.get("N")?;
    let (pl, pv) = f.raw("potential")?;
    let potential: PotentialSpec = pv.parse().map_err(|_| parse_err(pl, format!("bad potential `{pv}`")))?;
    let trials = f.get("trials")?;
    let master_seed = f.get("master_seed")?;
    let gradient_tolerance = f.get("gradient_tolerance")?;
    let dedup_tolerance = f.get("dedup_tolerance")?;
    let unconverged = f.get("unconverged")?;
    let nrec: usize = f.get("records")?;
    let mut records = Vec::with_capacity(nrec);
    for i in 0..nrec {
        let (ln, idx) = f.raw("record")?;
        if idx != i.to_string() {
            return Err(parse_err(ln, format!("expected record {i}, found `{idx}`")));
        }
        let energy = f.get("energy")?;
        let occurrences = f.get("occurrences")?;
        let parameter_count = f.get("parameter_count")?;
        let balanced = f.get("balanced")?;
        let symmetry_order = f.get("symmetry_order")?;
        let max_inner_product = f.get("max_inner_product")?;
        let (sl, sv) = f.raw("seeds")?;
        let seeds = sv
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(sl, format!("bad seed `{t}`"))))
            .collect::<Result<Vec<u64>>>()?;
        f.raw("config")?;
        let config = parse_config_lines(&mut f.lines, f.last)?;
        records.push(LocalMinimumRecord {
            energy,
            config,
            occurrences,
            parameter_count,
            balanced,
            symmetry_order,
            max_inner_product,
            seeds,
        });
    }
    if let Some((ln, _)) = f.lines.next() {
        return Err(parse_err(ln, "unexpected trailing content"));
    }
    let levels: Vec<f64> = records.iter().map(|r| r.energy).collect();
    Ok(SearchReport {
        n,
        count,
        potential,
        trials,
        master_seed,
        gradient_tolerance,
        dedup_tolerance,
        records,
        unconverged,
        gaps: gap_statistics_from_levels(&levels).ok(),
    })
}

pub fn read_report(path: impl AsRef<Path>) -> Result<SearchReport> {
    parse_report(&fs::read_to_string(path)?)
}

pub fn write_report(report: &SearchReport, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_report(report))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cell600, schlafli};
    use crate::energy::energy;
    use crate::optimize::DescentSettings;
    use crate::search::run_search;

    #[test]
    fn config_round_trip_is_exact() {
        for c in [cell600(), schlafli()] {
            let text = format_config(&c);
            let back = parse_config(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(format_config(&back), text);
            let p = PotentialSpec::Harmonic;
            assert!((energy(&back, &p).unwrap() - energy(&c, &p).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("sphopt-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.txt");
        write_config(&cell600(), &path).unwrap();
        assert_eq!(read_config(&path).unwrap(), cell600());
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn reader_errors() {
        let e = parse_config("2 2\n1 0\n0 1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        let e = parse_config("2 2\n1 0\n0 1.01\n").unwrap_err();
        assert_eq!(e, Error::NotOnSphere { index: 1, norm: 1.01 });
        assert!(matches!(parse_config("2\n1 0\n").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(parse_config("2 3\n1 0\n0 1\n").unwrap_err(), Error::Parse { .. }));
        assert!(matches!(parse_config("2 1\n1 x\n").unwrap_err(), Error::Parse { line: 2, .. }));
        assert!(matches!(parse_config("2 1\n1 0\n1 0\n").unwrap_err(), Error::Parse { line: 3, .. }));
    }

    #[test]
    fn reader_renormalizes_small_deviations() {
        let c = parse_config("# two points\n2 2\n1.0000000001 0\n\n0 -0.9999999999\n").unwrap();
        assert_eq!(c.point(0), &[1.0, 0.0]);
        assert_eq!(c.point(1), &[0.0, -1.0]);
    }

    #[test]
    fn report_round_trip() {
        let r = run_search(3, 6, PotentialSpec::TruncatedPower(3), 12, 9, &DescentSettings::search()).unwrap();
        let text = format_report(&r);
        let back = parse_report(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(format_report(&back), text);
        assert!(parse_report(&text.replace("trials 12", "trials x")).is_err());
    }
}
