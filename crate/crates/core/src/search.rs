//! Random-restart searches, energy levels and their gaps, universality screens
//! and comparisons between candidate configurations.

use rayon::prelude::*;

use crate::analysis::{automorphism_group, is_balanced, parameter_count, DEFAULT_COLOR_TOLERANCE, DEFAULT_FORCE_TOLERANCE};
use crate::config::PointConfig;
use crate::energy::{energy, riemannian_hessian_spectrum};
use crate::error::{Error, Result};
use crate::optimize::{gradient_descent, random_config, DescentSettings};
use crate::potential::PotentialSpec;
use crate::rng::mix;

/// Minima whose polished energies differ by at most this much, relative to
/// `max(1, |energy|)`, are merged.
pub const DEDUP_TOLERANCE: f64 = 1e-9;
/// Gaps larger than this multiple of the median spacing are flagged.
pub const GAP_RATIO_THRESHOLD: f64 = 10.0;
/// A polished critical point counts as a saddle when its smallest Hessian
/// eigenvalue is below `-SADDLE_TOLERANCE * max(1, largest)`.
pub const SADDLE_TOLERANCE: f64 = 1e-6;
/// Relative energy margin for screen verdicts.
pub const SCREEN_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct LocalMinimumRecord {
    pub energy: f64,
    /// The first trial (by index) that reached this level.
    pub config: PointConfig,
    pub occurrences: usize,
    pub parameter_count: usize,
    pub balanced: bool,
    pub symmetry_order: u128,
    pub max_inner_product: f64,
    /// Seeds of the trials that reached this level, in trial order.
    pub seeds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapStatistics {
    /// Energy levels in increasing order.
    pub levels: Vec<f64>,
    /// `levels[i + 1] - levels[i]`.
    pub gaps: Vec<f64>,
    pub median_spacing: f64,
    pub ratios: Vec<f64>,
    /// Indices `i` of gaps with ratio above [`GAP_RATIO_THRESHOLD`].
    pub flagged: Vec<usize>,
}

impl GapStatistics {
    /// The flagged gaps as `(lower level, upper level)`.
    pub fn flagged_intervals(&self) -> Vec<(f64, f64)> {
        self.flagged.iter().map(|&i| (self.levels[i], self.levels[i + 1])).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub n: usize,
    pub count: usize,
    pub potential: PotentialSpec,
    pub trials: usize,
    pub master_seed: u64,
    pub gradient_tolerance: f64,
    pub dedup_tolerance: f64,
    /// Sorted by energy.
    pub records: Vec<LocalMinimumRecord>,
    pub unconverged: usize,
    /// Present when there are at least three records.
    pub gaps: Option<GapStatistics>,
}

impl SearchReport {
    pub fn best(&self) -> Option<&LocalMinimumRecord> {
        self.records.first()
    }

    pub fn frequency(&self, record: usize) -> f64 {
        self.records[record].occurrences as f64 / self.trials as f64
    }

    /// The record within `tol` of `energy`, if any.
    pub fn find(&self, energy: f64, tol: f64) -> Option<&LocalMinimumRecord> {
        self.records.iter().find(|r| (r.energy - energy).abs() <= tol)
    }
}

enum Outcome {
    Minimum { energy: f64, config: PointConfig },
    Unconverged,
}

fn run_trial(n: usize, count: usize, potential: &PotentialSpec, settings: &DescentSettings, seed: u64) -> Outcome {
    let descend = || -> Result<Outcome> {
        let start = random_config(n, count, seed)?;
        let result = gradient_descent(&start, potential, settings)?;
        if !result.converged {
            return Ok(Outcome::Unconverged);
        }
        let spectrum = riemannian_hessian_spectrum(&result.config, potential)?;
        let top = spectrum.eigenvalues.iter().fold(1.0f64, |m, l| m.max(l.abs()));
        if spectrum.min() < -SADDLE_TOLERANCE * top {
            return Ok(Outcome::Unconverged);
        }
        Ok(Outcome::Minimum { energy: result.energy, config: result.config })
    };
    descend().unwrap_or(Outcome::Unconverged)
}

struct Level {
    energy: f64,
    config: PointConfig,
    seeds: Vec<u64>,
}

/// Runs the trials in parallel and merges them in trial order.
fn collect_levels(
    n: usize,
    count: usize,
    potential: &PotentialSpec,
    trials: usize,
    master_seed: u64,
    settings: &DescentSettings,
) -> (Vec<Level>, usize) {
    let outcomes: Vec<(u64, Outcome)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let seed = mix(master_seed, i);
            (seed, run_trial(n, count, potential, settings, seed))
        })
        .collect();
    let mut levels: Vec<Level> = Vec::new();
    let mut unconverged = 0;
    for (seed, outcome) in outcomes {
        match outcome {
            Outcome::Unconverged => unconverged += 1,
            Outcome::Minimum { energy, config } => {
                match levels.iter_mut().find(|l| (l.energy - energy).abs() <= DEDUP_TOLERANCE * energy.abs().max(1.0)) {
                    Some(l) => l.seeds.push(seed),
                    None => levels.push(Level { energy, config, seeds: vec![seed] }),
                }
            }
        }
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    (levels, unconverged)
}

/// Random-restart search: trial `i` starts from `random_config(n, N, mix(master_seed, i))`,
/// descends, polishes, and is kept when it ends at a local minimum.
pub fn run_search(
    n: usize,
    count: usize,
    potential: PotentialSpec,
    trials: usize,
    master_seed: u64,
    settings: &DescentSettings,
) -> Result<SearchReport> {
    if trials == 0 {
        return Err(Error::ParameterOutOfRange("trials must be at least 1".into()));
    }
    potential.validate()?;
    settings.validate()?;
    if n < 2 || count < 2 {
        return Err(Error::InvalidConfig(format!("need n >= 2 and N >= 2, got ({n}, {count})")));
    }
    let (levels, unconverged) = collect_levels(n, count, &potential, trials, master_seed, settings);
    let records: Vec<LocalMinimumRecord> = levels
        .into_par_iter()
        .map(|l| LocalMinimumRecord {
            energy: l.energy,
            occurrences: l.seeds.len(),
            parameter_count: parameter_count(&l.config, DEFAULT_FORCE_TOLERANCE),
            balanced: is_balanced(&l.config, DEFAULT_FORCE_TOLERANCE).balanced,
            symmetry_order: automorphism_group(&l.config, DEFAULT_COLOR_TOLERANCE).order,
            max_inner_product: l.config.max_inner_product(),
            config: l.config,
            seeds: l.seeds,
        })
        .collect();
    let levels: Vec<f64> = records.iter().map(|r| r.energy).collect();
    Ok(SearchReport {
        n,
        count,
        potential,
        trials,
        master_seed,
        gradient_tolerance: settings.gradient_tolerance,
        dedup_tolerance: DEDUP_TOLERANCE,
        gaps: gap_statistics_from_levels(&levels).ok(),
        records,
        unconverged,
    })
}

/// Gap statistics of the energy levels of a report.
pub fn gap_statistics(report: &SearchReport) -> Result<GapStatistics> {
    let levels: Vec<f64> = report.records.iter().map(|r| r.energy).collect();
    gap_statistics_from_levels(&levels)
}

/// Consecutive gaps of the sorted levels and their ratios to the median gap.
pub fn gap_statistics_from_levels(levels: &[f64]) -> Result<GapStatistics> {
    if levels.len() < 3 {
        return Err(Error::TooFewLevels(levels.len()));
    }
    let mut levels = levels.to_vec();
    levels.sort_by(f64::total_cmp);
    let gaps: Vec<f64> = levels.windows(2).map(|w| w[1] - w[0]).collect();
    let mut sorted = gaps.clone();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len();
    let median_spacing = if m % 2 == 1 { sorted[m / 2] } else { (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0 };
    let ratios: Vec<f64> = gaps.iter().map(|g| if median_spacing > 0.0 { g / median_spacing } else { f64::INFINITY }).collect();
    let flagged = (0..gaps.len()).filter(|&i| ratios[i] > GAP_RATIO_THRESHOLD && gaps[i] > 0.0).collect();
    Ok(GapStatistics { levels, gaps, median_spacing, ratios, flagged })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScreenVerdict {
    /// The search found a strictly lower energy.
    CandidateBeaten,
    /// Nothing found was as low as the candidate.
    CandidateBest,
    Tie,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScreenEntry {
    pub k: u32,
    pub candidate_energy: f64,
    pub best_energy: Option<f64>,
    /// Trials that ended at a local minimum.
    pub minima_found: usize,
    pub verdict: ScreenVerdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScreenReport {
    pub entries: Vec<ScreenEntry>,
}

impl ScreenReport {
    pub fn counterexample_found(&self) -> bool {
        self.entries.iter().any(|e| e.verdict == ScreenVerdict::CandidateBeaten)
    }
}

/// Compares a candidate against random searches under `(4 - r)^k` for
/// `k = 1..=k_max`; the search for `k` uses master seed `mix(master_seed, k)`.
pub fn universality_screen(
    candidate: &PointConfig,
    k_max: u32,
    trials_per_k: usize,
    master_seed: u64,
) -> Result<ScreenReport> {
    if k_max == 0 || trials_per_k == 0 {
        return Err(Error::ParameterOutOfRange("k_max and trials_per_k must be at least 1".into()));
    }
    let settings = DescentSettings::search();
    let mut entries = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let potential = PotentialSpec::TruncatedPower(k);
        let candidate_energy = energy(candidate, &potential)?;
        let (levels, unconverged) =
            collect_levels(candidate.dim(), candidate.len(), &potential, trials_per_k, mix(master_seed, k as u64), &settings);
        let best_energy = levels.first().map(|l| l.energy);
        let margin = SCREEN_MARGIN * candidate_energy.abs().max(1.0);
        let verdict = match best_energy {
            Some(b) if b < candidate_energy - margin => ScreenVerdict::CandidateBeaten,
            Some(b) if b <= candidate_energy + margin => ScreenVerdict::Tie,
            _ => ScreenVerdict::CandidateBest,
        };
        entries.push(ScreenEntry { k, candidate_energy, best_energy, minima_found: trials_per_k - unconverged, verdict });
    }
    Ok(ScreenReport { entries })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedCandidate {
    /// Position in the input.
    pub index: usize,
    pub energy: f64,
}

/// Energies in increasing order, ties kept in input order.
pub fn compare_candidates(configs: &[PointConfig], potential: &PotentialSpec) -> Result<Vec<RankedCandidate>> {
    let Some(first) = configs.first() else {
        return Ok(Vec::new());
    };
    let mut ranked = Vec::with_capacity(configs.len());
    for (index, c) in configs.iter().enumerate() {
        if (c.dim(), c.len()) != (first.dim(), first.len()) {
            return Err(Error::ShapeMismatch(first.dim(), first.len(), c.dim(), c.len()));
        }
        ranked.push(RankedCandidate { index, energy: energy(c, potential)? });
    }
    ranked.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(ranked)
}

/// Best member of a one-parameter family found by a grid scan followed by
/// golden-section refinement.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyOptimum {
    pub parameter: f64,
    pub energy: f64,
    pub config: PointConfig,
}

/// Minimizes the energy of `build(t)` over `grid`, then refines between the
/// neighbors of the best grid point.
pub fn optimize_family(
    build: impl Fn(f64) -> Result<PointConfig>,
    grid: &[f64],
    potential: &PotentialSpec,
) -> Result<FamilyOptimum> {
    let eval = |t: f64| -> Result<f64> { energy(&build(t)?, potential) };
    let mut best: Option<(usize, f64)> = None;
    for (i, &t) in grid.iter().enumerate() {
        let Ok(e) = eval(t) else { continue };
        if best.is_none_or(|(_, b)| e < b) {
            best = Some((i, e));
        }
    }
    let (i, _) = best.ok_or_else(|| Error::ParameterOutOfRange("no grid point gives a valid configuration".into()))?;
    let (mut lo, mut hi) = (grid[i.saturating_sub(1)], grid[(i + 1).min(grid.len() - 1)]);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - g * (hi - lo);
    let mut b = lo + g * (hi - lo);
    let big = |t: f64| eval(t).unwrap_or(f64::INFINITY);
    let (mut fa, mut fb) = (big(a), big(b));
    for _ in 0..200 {
        if hi - lo <= 1e-13 * (1.0 + lo.abs()) {
            break;
        }
        if fa < fb {
            hi = b;
            (b, fb) = (a, fa);
            a = hi - g * (hi - lo);
            fa = big(a);
        } else {
            lo = a;
            (a, fa) = (b, fb);
            b = lo + g * (hi - lo);
            fb = big(b);
        }
    }
    let candidates = [(grid[i], eval(grid[i])?), (a, fa), (b, fb)];
    let (parameter, energy) =
        candidates.into_iter().filter(|(_, e)| e.is_finite()).min_by(|x, y| x.1.total_cmp(&y.1)).expect("grid point is finite");
    Ok(FamilyOptimum { parameter, energy, config: build(parameter)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        build_40_in_10, build_40_in_10_competitor, build_diplo_simplex, build_gram_12_in_4_family1,
        build_gram_12_in_4_family2, cross_polytope, ngon, perturb_diplo_simplex, realize_from_gram, DiploParams,
    };

    #[test]
    fn pentagon_search() {
        let r = run_search(2, 5, PotentialSpec::Harmonic, 100, 5, &DescentSettings::search()).unwrap();
        assert_eq!(r.records.len(), 1);
        // -sum log|x_i - x_j|^2 over the pentagon: 5 edges of 2 - 2cos(72deg), 5 of 2 - 2cos(144deg)
        let exact = -5.0 * ((2.0 - 2.0 * (0.4 * std::f64::consts::PI).cos()).ln()
            + (2.0 - 2.0 * (0.8 * std::f64::consts::PI).cos()).ln());
        assert!((r.records[0].energy - exact).abs() < 1e-9);
        assert_eq!(r.records[0].occurrences + r.unconverged, 100);
        assert_eq!(r.records[0].symmetry_order, 10);
        assert!(r.records[0].balanced);
        assert!(r.gaps.is_none());
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| run_search(3, 7, PotentialSpec::Harmonic, 40, 11, &DescentSettings::search()).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn conservation_and_dedup() {
        let r = run_search(3, 9, PotentialSpec::TruncatedPower(6), 30, 2, &DescentSettings::search()).unwrap();
        assert_eq!(r.records.iter().map(|x| x.occurrences).sum::<usize>() + r.unconverged, 30);
        for w in r.records.windows(2) {
            assert!(w[1].energy - w[0].energy > DEDUP_TOLERANCE);
        }
        assert!(run_search(3, 9, PotentialSpec::Harmonic, 0, 2, &DescentSettings::search()).is_err());
    }

    #[test]
    fn gaps() {
        assert_eq!(gap_statistics_from_levels(&[1.0, 2.0]).unwrap_err(), Error::TooFewLevels(2));
        let even: Vec<f64> = (0..10).map(|i| i as f64 * 0.5).collect();
        assert!(gap_statistics_from_levels(&even).unwrap().flagged.is_empty());
        let g = gap_statistics_from_levels(&[0.0, 0.1, 0.2, 5.0, 5.1, 5.2]).unwrap();
        assert_eq!(g.flagged, vec![2]);
        assert_eq!(g.flagged_intervals(), vec![(0.2, 5.0)]);
        assert!((g.median_spacing - 0.1).abs() < 1e-12);
    }

    #[test]
    fn screen_simplex_and_cross() {
        let tetra = crate::constructions::simplex_config(3, 4).unwrap();
        let s = universality_screen(&tetra, 4, 10, 1).unwrap();
        assert!(!s.counterexample_found());
        assert_eq!(s.entries.len(), 4);
        let s = universality_screen(&cross_polytope(3).unwrap(), 3, 10, 1).unwrap();
        assert!(!s.counterexample_found());
    }

    #[test]
    fn screen_finds_counterexample() {
        // a square in the plane is not optimal for 4 points in R^3
        let square = ngon(4).unwrap().padded(3).unwrap();
        let s = universality_screen(&square, 2, 10, 3).unwrap();
        assert!(s.counterexample_found());
    }

    #[test]
    fn comparisons() {
        let single = compare_candidates(&[ngon(5).unwrap()], &PotentialSpec::Harmonic).unwrap();
        assert_eq!(single.len(), 1);
        let mut configs = vec![build_40_in_10()];
        for i in 1..20 {
            configs.push(build_40_in_10_competitor(i as f64 * 0.01).unwrap());
        }
        let ranked = compare_candidates(&configs, &PotentialSpec::Harmonic).unwrap();
        assert_eq!(ranked[0].index, 0);
        let err = compare_candidates(&[ngon(5).unwrap(), ngon(6).unwrap()], &PotentialSpec::Harmonic);
        assert_eq!(err.unwrap_err(), Error::ShapeMismatch(2, 5, 2, 6));
        let tie = compare_candidates(&[ngon(5).unwrap(), ngon(5).unwrap()], &PotentialSpec::Harmonic).unwrap();
        assert_eq!((tie[0].index, tie[1].index), (0, 1));
    }

    #[test]
    fn perturbed_cube_beats_cube_for_code_proxy() {
        let cube = build_diplo_simplex(3).unwrap();
        let params = DiploParams { alpha: 0.8355, beta: 0.5, gamma: 0.0 };
        let better = perturb_diplo_simplex(3, params).unwrap();
        let ranked = compare_candidates(&[cube, better], &PotentialSpec::TruncatedPower(40)).unwrap();
        assert_eq!(ranked[0].index, 1);
    }

    #[test]
    fn twelve_point_crossover() {
        let f1 = |a: f64| realize_from_gram(&build_gram_12_in_4_family1(a)?, 4);
        let f2 = |a: f64| realize_from_gram(&build_gram_12_in_4_family2(a)?, 4);
        let g1: Vec<f64> = (1..50).map(|i| i as f64 * 0.01).collect();
        let g2: Vec<f64> = (1..34).map(|i| i as f64 * 0.01).collect();
        for (k, first_wins) in [(5, true), (12, false)] {
            let p = PotentialSpec::TruncatedPower(k);
            let a = optimize_family(f1, &g1, &p).unwrap();
            let b = optimize_family(f2, &g2, &p).unwrap();
            assert_eq!(a.energy < b.energy, first_wins, "k = {k}: {} vs {}", a.energy, b.energy);
        }
    }
}
