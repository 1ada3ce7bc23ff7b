use spherical_optima::constructions::*;
use spherical_optima::fixtures::{levels_120_in_4, GAPS_120_IN_4, MINIMA_27_IN_6};
use spherical_optima::optimize::DescentSettings;
use spherical_optima::search::*;
use spherical_optima::{energy, Error, PointConfig, PotentialSpec};

fn named(name: &str) -> PointConfig {
    build_catalog(&CatalogEntry::named(name).unwrap()).unwrap()
}

#[test]
fn pentagon_is_the_only_planar_five_point_minimum() {
    let r = run_search(2, 5, PotentialSpec::Harmonic, 100, 3, &DescentSettings::search()).unwrap();
    assert_eq!(r.records.len(), 1);
    assert_eq!(r.records[0].occurrences + r.unconverged, 100);
    // -log r summed over 5 sides at 4 sin^2(pi/5) and 5 diagonals at 4 sin^2(2 pi/5)
    let s = |k: f64| 4.0 * (k * std::f64::consts::PI / 5.0).sin().powi(2);
    let want = -5.0 * s(1.0).ln() - 5.0 * s(2.0).ln();
    assert!((r.records[0].energy - want).abs() < 1e-10);
}

#[test]
fn tabulated_120_point_levels_have_four_large_gaps() {
    let stats = gap_statistics_from_levels(&levels_120_in_4()).unwrap();
    let flagged = stats.flagged_intervals();
    for (lo, hi) in GAPS_120_IN_4 {
        assert!(flagged.contains(&(lo, hi)), "{lo}..{hi}");
    }
    // the ratio rule also flags one gap the text does not single out
    assert_eq!(flagged.len(), 4);
    assert!(flagged.contains(&(5402.366164, 5402.922701)));
    assert!((stats.median_spacing - 0.034161).abs() < 1e-9);
}

#[test]
fn gap_after_the_27_point_optimum() {
    let levels: Vec<f64> = MINIMA_27_IN_6.iter().map(|m| m.energy).collect();
    let stats = gap_statistics_from_levels(&levels).unwrap();
    assert_eq!(stats.flagged_intervals(), vec![(111.0, 112.6145815185)]);
}

#[test]
fn evenly_spaced_levels_have_no_gaps() {
    let levels: Vec<f64> = (0..20).map(|i| 3.0 + 0.5 * i as f64).collect();
    assert!(gap_statistics_from_levels(&levels).unwrap().flagged.is_empty());
    assert_eq!(gap_statistics_from_levels(&[1.0, 2.0]).unwrap_err(), Error::TooFewLevels(2));
}

#[test]
fn universal_optima_survive_screens() {
    for c in [simplex_config(3, 4).unwrap(), cross_polytope(4).unwrap()] {
        let r = universality_screen(&c, 6, 30, 1).unwrap();
        assert!(!r.counterexample_found());
    }
    let r = universality_screen(&schlafli(), 5, 200, 2).unwrap();
    assert!(r.entries.iter().all(|e| e.verdict != ScreenVerdict::CandidateBeaten));
    assert_eq!(r.entries.len(), 5);
}

fn family_optimum(second: bool, k: u32) -> FamilyOptimum {
    let p = PotentialSpec::TruncatedPower(k);
    if second {
        let grid: Vec<f64> = (1..34).map(|i| i as f64 * 0.01).collect();
        optimize_family(|a| realize_from_gram(&build_gram_12_in_4_family2(a)?, 4), &grid, &p).unwrap()
    } else {
        let grid: Vec<f64> = (1..50).map(|i| i as f64 * 0.01).collect();
        optimize_family(|a| realize_from_gram(&build_gram_12_in_4_family1(a)?, 4), &grid, &p).unwrap()
    }
}

#[test]
fn twelve_point_families_beat_each_other() {
    let (f1, f2) = (family_optimum(false, 10), family_optimum(true, 10));
    let e1 = energy(&f1.config, &PotentialSpec::TruncatedPower(10)).unwrap();
    assert!(f2.energy < e1 - SCREEN_MARGIN * e1);
    let r = universality_screen(&f1.config, 10, 60, 3).unwrap();
    assert_eq!(r.entries[9].verdict, ScreenVerdict::CandidateBeaten);

    let (f1, f2) = (family_optimum(false, 5), family_optimum(true, 5));
    assert!(f1.energy < f2.energy);
    let r = universality_screen(&f2.config, 5, 60, 4).unwrap();
    assert_eq!(r.entries[4].verdict, ScreenVerdict::CandidateBeaten);
}

#[test]
fn forty_point_code_beats_its_competitors() {
    let mut configs = vec![build_40_in_10()];
    for i in 1..=19 {
        let alpha = 0.01 * i as f64;
        if alpha <= 1.0 / 27f64.sqrt() {
            configs.push(build_40_in_10_competitor(alpha).unwrap());
        }
    }
    let ranking = compare_candidates(&configs, &PotentialSpec::Harmonic).unwrap();
    assert_eq!(ranking[0].index, 0);
    assert_eq!(ranking.len(), configs.len());
}

#[test]
fn rotated_cube_face_improves_the_code() {
    let cube = build_diplo_simplex(3).unwrap();
    let tuned = perturb_diplo_simplex(3, DiploParams { alpha: 0.8355, beta: 0.5, gamma: 0.0 }).unwrap();
    let ranking = compare_candidates(&[cube, tuned], &PotentialSpec::TruncatedPower(40)).unwrap();
    assert_eq!(ranking[0].index, 1);
}

#[test]
fn comparison_edge_cases() {
    let one = compare_candidates(&[cell600()], &PotentialSpec::Harmonic).unwrap();
    assert_eq!(one.len(), 1);
    assert!(compare_candidates(&[], &PotentialSpec::Harmonic).unwrap().is_empty());
    let err = compare_candidates(&[cell600(), schlafli()], &PotentialSpec::Harmonic).unwrap_err();
    assert!(matches!(err, Error::ShapeMismatch(..)));
    let ties = compare_candidates(&[named("cell24_24_4"), named("cell24_24_4")], &PotentialSpec::Harmonic).unwrap();
    assert_eq!((ties[0].index, ties[1].index), (0, 1));
}

#[test]
fn records_are_separated_and_annotated() {
    let r = run_search(3, 12, PotentialSpec::TruncatedPower(6), 80, 9, &DescentSettings::search()).unwrap();
    assert_eq!(r.records.iter().map(|x| x.occurrences).sum::<usize>() + r.unconverged, 80);
    for w in r.records.windows(2) {
        assert!(w[1].energy - w[0].energy > DEDUP_TOLERANCE);
    }
    let best = r.best().unwrap();
    assert_eq!(best.symmetry_order, 120);
    assert!(best.balanced);
    assert_eq!(best.parameter_count, 0);
    assert!((best.max_inner_product - 1.0 / 5f64.sqrt()).abs() < 1e-9);
}
