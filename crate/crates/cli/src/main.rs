//! `sphopt`: build, search, analyze and draw point configurations on spheres.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spherical_optima::analysis::{
    automorphism_group, design_strength, distance_spectrum, is_balanced, parameter_count, project_svg,
    recognize_value, DEFAULT_CLUSTER_TOLERANCE, DEFAULT_COLOR_TOLERANCE, DEFAULT_FORCE_TOLERANCE,
    DEFAULT_MAX_DENOMINATOR, DEFAULT_MAX_DISCRIMINANT,
};
use spherical_optima::constructions::{build_catalog, catalog_names, CatalogEntry};
use spherical_optima::fixtures::levels_120_in_4;
use spherical_optima::io::{format_config, format_report, parse_config, read_config, read_report};
use spherical_optima::optimize::DescentSettings;
use spherical_optima::search::{
    compare_candidates, gap_statistics, gap_statistics_from_levels, run_search, universality_screen, GapStatistics,
    ScreenVerdict,
};
use spherical_optima::{energy, Error, PointConfig, PotentialSpec};

const USAGE_ERROR: u8 = 2;
const DATA_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "sphopt", version, about = "Energy minima of point configurations on spheres")]
struct Cli {
    /// Print numbers with 17 significant digits instead of 12 decimals.
    #[arg(long, global = true)]
    full: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named configuration.
    Build {
        /// Catalog entry; `--list` shows all of them.
        #[arg(required_unless_present = "list")]
        entry: Option<String>,
        /// Parameter override, `key=value`.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
    /// Random-restart search for local minima.
    Search {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'N')]
        count: usize,
        #[arg(long, default_value = "harmonic", value_parser = parse_potential)]
        potential: PotentialSpec,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Gradient norm at which descent hands over to Newton polishing.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Analyze a configuration file (`-` or no file reads standard input).
    Analyze {
        file: Option<PathBuf>,
        #[command(flatten)]
        what: AnalyzeFlags,
        #[arg(long, default_value = "harmonic", value_parser = parse_potential)]
        potential: PotentialSpec,
        /// Highest degree tried by `--design`.
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
    },
    /// Test a candidate against searches under (4 - r)^k.
    Screen {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        kmax: u32,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rank configurations of the same shape by energy.
    Compare {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value = "harmonic", value_parser = parse_potential)]
        potential: PotentialSpec,
    },
    /// Draw a random plane projection as SVG.
    Project {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Energy gaps of a search report.
    Gaps {
        #[arg(required_unless_present = "fixture")]
        report: Option<PathBuf>,
        /// Use the stored levels for 120 points in R^4 instead of a report.
        #[arg(long, conflicts_with = "report")]
        fixture: bool,
    },
}

#[derive(Args)]
struct AnalyzeFlags {
    #[arg(long)]
    balanced: bool,
    #[arg(long)]
    params: bool,
    #[arg(long)]
    symmetry: bool,
    #[arg(long)]
    design: bool,
    #[arg(long)]
    spectrum: bool,
    #[arg(long)]
    recognize: bool,
    #[arg(long)]
    energy: bool,
}

impl AnalyzeFlags {
    fn none(&self) -> bool {
        !(self.balanced || self.params || self.symmetry || self.design || self.spectrum || self.recognize || self.energy)
    }
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v: f64 = v.parse().map_err(|_| format!("bad number `{v}`"))?;
    Ok((k.to_string(), v))
}

fn parse_potential(s: &str) -> Result<PotentialSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Out {
    full: bool,
    text: String,
}

impl Out {
    fn num(&self, x: f64) -> String {
        let s = if self.full { format!("{x:.16e}") } else { format!("{x:.12}") };
        // no negative zero in printed output
        match s.strip_prefix('-') {
            Some(rest) if rest.chars().all(|c| matches!(c, '0' | '.' | 'e')) => rest.to_string(),
            _ => s,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

fn load(file: &Option<PathBuf>) -> Result<PointConfig, Error> {
    match file {
        Some(p) if p.as_os_str() != "-" => read_config(p),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            parse_config(&s)
        }
    }
}

fn emit(output: &Option<PathBuf>, content: &str, out: &mut Out) -> Result<(), Error> {
    match output {
        Some(p) => std::fs::write(p, content)?,
        None => out.text.push_str(content),
    }
    Ok(())
}

fn print_gaps(g: &GapStatistics, out: &mut Out) {
    out.line(format!("levels: {}", g.levels.len()));
    out.line(format!("median spacing: {}", out.num(g.median_spacing)));
    for &i in &g.flagged {
        let line = format!(
            "gap: {} -> {} size {} ratio {:.2}",
            out.num(g.levels[i]),
            out.num(g.levels[i + 1]),
            out.num(g.gaps[i]),
            g.ratios[i]
        );
        out.line(line);
    }
}

fn run(cli: Cli, out: &mut Out) -> Result<(), Error> {
    match cli.command {
        Command::Build { list: true, .. } => {
            for name in catalog_names() {
                let e = CatalogEntry::named(name)?;
                let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let params = if params.is_empty() { String::new() } else { format!(" [{}]", params.join(", ")) };
                out.line(format!("{name}: n={} N={}{params}", e.n, e.count));
            }
        }
        Command::Build { entry, params, output, .. } => {
            let name = entry.expect("required by clap");
            let params: Vec<(&str, f64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
            let config = build_catalog(&CatalogEntry::new(&name, &params)?)?;
            emit(&output, &format_config(&config), out)?;
        }
        Command::Search { n, count, potential, trials, seed, tolerance, output } => {
            let mut settings = DescentSettings::search();
            if let Some(t) = tolerance {
                settings.gradient_tolerance = t;
            }
            let report = run_search(n, count, potential, trials, seed, &settings)?;
            if let Some(p) = &output {
                std::fs::write(p, format_report(&report))?;
            }
            out.line(format!("trials: {}, unconverged: {}, levels: {}", report.trials, report.unconverged, report.records.len()));
            for r in &report.records {
                let line = format!(
                    "{} count {} parameters {} symmetries {} max cosine {}",
                    out.num(r.energy),
                    r.occurrences,
                    r.parameter_count,
                    r.symmetry_order,
                    out.num(r.max_inner_product)
                );
                out.line(line);
            }
        }
        Command::Analyze { file, what, potential, max_degree } => {
            let c = load(&file)?;
            let all = what.none();
            out.line(format!("points: {}, dimension: {}", c.len(), c.dim()));
            if all || what.energy {
                let line = format!("energy: {}", out.num(energy(&c, &potential)?));
                out.line(line);
                let line = format!("max cosine: {}", out.num(c.max_inner_product()));
                out.line(line);
            }
            if all || what.spectrum {
                let s = distance_spectrum(&c, DEFAULT_CLUSTER_TOLERANCE);
                for class in &s.classes {
                    let line = format!("inner product {} count {}", out.num(class.inner_product()), class.multiplicity);
                    out.line(line);
                }
                if s.ambiguous {
                    out.line("warning: distance classes are close together");
                }
            }
            if what.recognize {
                for class in &distance_spectrum(&c, DEFAULT_CLUSTER_TOLERANCE).classes {
                    let t = class.inner_product();
                    let v = recognize_value(t, DEFAULT_MAX_DENOMINATOR, DEFAULT_MAX_DISCRIMINANT);
                    let line = format!("{} = {v}", out.num(t));
                    out.line(line);
                }
            }
            if all || what.balanced {
                let b = is_balanced(&c, DEFAULT_FORCE_TOLERANCE);
                out.line(format!("balanced: {}", b.balanced));
                if let Some((i, d)) = b.witness {
                    let line = format!("witness: point {i}, squared distance {}", out.num(d));
                    out.line(line);
                }
            }
            if all || what.params {
                out.line(format!("parameters: {}", parameter_count(&c, DEFAULT_FORCE_TOLERANCE)));
            }
            if all || what.symmetry {
                let s = automorphism_group(&c, DEFAULT_COLOR_TOLERANCE);
                let chiral = s.chiral.map_or("undefined".to_string(), |b| b.to_string());
                out.line(format!("order: {}, chiral: {}", s.order, chiral));
                out.line(format!("orbits: {}", s.orbits.len()));
            }
            if all || what.design {
                out.line(format!("design strength: {}", design_strength(&c, max_degree)));
            }
        }
        Command::Screen { file, kmax, trials, seed } => {
            let c = read_config(&file)?;
            let report = universality_screen(&c, kmax, trials, seed)?;
            for e in &report.entries {
                let verdict = match e.verdict {
                    ScreenVerdict::CandidateBeaten => "candidate beaten",
                    ScreenVerdict::CandidateBest => "candidate best",
                    ScreenVerdict::Tie => "tie",
                };
                let best = e.best_energy.map_or("none".to_string(), |b| out.num(b));
                let line = format!(
                    "k {}: candidate {} best found {} ({} of {trials} trials at minima) {}",
                    e.k,
                    out.num(e.candidate_energy),
                    best,
                    e.minima_found,
                    verdict
                );
                out.line(line);
            }
            out.line(if report.counterexample_found() {
                "verdict: counterexample found"
            } else {
                "verdict: consistent with universal optimality"
            });
        }
        Command::Compare { files, potential } => {
            let configs = files.iter().map(read_config).collect::<Result<Vec<_>, _>>()?;
            for (rank, r) in compare_candidates(&configs, &potential)?.iter().enumerate() {
                let line = format!("{}. {} {}", rank + 1, out.num(r.energy), files[r.index].display());
                out.line(line);
            }
        }
        Command::Project { file, seed, output } => {
            let c = read_config(&file)?;
            emit(&output, &project_svg(&c, seed), out)?;
        }
        Command::Gaps { report, fixture } => {
            let g = if fixture {
                gap_statistics_from_levels(&levels_120_in_4())?
            } else {
                gap_statistics(&read_report(report.expect("required by clap"))?)?
            };
            print_gaps(&g, out);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    let mut out = Out { full: cli.full, text: String::new() };
    let status = match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(DATA_ERROR)
        }
    };
    let _ = io::stdout().write_all(out.text.as_bytes());
    status
}
