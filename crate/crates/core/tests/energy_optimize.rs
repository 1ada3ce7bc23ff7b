mod common;

use spherical_optima::constructions::{build_catalog, cell600, cross_polytope, schlafli, CatalogEntry};
use spherical_optima::fixtures::{minimum_27_in_6_112736, MINIMA_27_IN_6};
use spherical_optima::optimize::{
    gradient_descent, gradient_descent_observed, newton_polish, random_config, DescentSettings,
};
use spherical_optima::search::run_search;
use spherical_optima::{energy, riemannian_gradient, riemannian_hessian_spectrum, PointConfig, PotentialSpec};

#[test]
fn reference_energies() {
    assert!((energy(&schlafli(), &PotentialSpec::Harmonic).unwrap() - 111.0).abs() <= 1e-9);
    assert!((energy(&cell600(), &PotentialSpec::Harmonic).unwrap() - 5395.0).abs() <= 1e-8);
}

#[test]
fn symmetric_configurations_are_critical() {
    for n in 2..7 {
        let g = riemannian_gradient(&cross_polytope(n).unwrap(), &PotentialSpec::Harmonic).unwrap();
        assert!(g.sup_norm() <= 1e-10, "n = {n}");
    }
    let g = riemannian_gradient(&schlafli(), &PotentialSpec::TruncatedPower(2)).unwrap();
    assert!(g.sup_norm() <= 1e-10);
}

#[test]
fn gradient_of_random_ten_points_in_r3() {
    let c = random_config(3, 10, 3).unwrap();
    for p in common::all_potentials() {
        assert!(common::gradient_fd_error(&c, &p, 4) < 1e-6, "{p:?}");
    }
}

#[test]
fn schlafli_hessian_has_only_rotational_zeros() {
    let s = riemannian_hessian_spectrum(&schlafli(), &PotentialSpec::Harmonic).unwrap();
    assert_eq!(s.eigenvalues.len(), 5 * 27);
    assert_eq!(s.zero_count, 15);
    assert_eq!(s.negative_count(), 0);
    assert!(!s.non_critical);
}

#[test]
fn spectrum_is_flagged_away_from_critical_points() {
    let s = riemannian_hessian_spectrum(&random_config(3, 6, 1).unwrap(), &PotentialSpec::Harmonic).unwrap();
    assert!(s.non_critical);
    assert_eq!(s.eigenvalues.len(), 12);
    assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn truncated_power_accepts_coincident_points() {
    let c = PointConfig::new(3, &[vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0]]).unwrap();
    let e = energy(&c, &PotentialSpec::TruncatedPower(3)).unwrap();
    assert!(e.is_finite());
    assert!(energy(&c, &PotentialSpec::InversePower(1.0)).is_err());
}

#[test]
fn random_configs() {
    assert_eq!(random_config(3, 100, 7).unwrap(), random_config(3, 100, 7).unwrap());
    let big = random_config(3, 10_000, 1).unwrap();
    let mut mean = [0.0; 3];
    for p in big.points() {
        for (m, x) in mean.iter_mut().zip(p) {
            *m += x / 10_000.0;
        }
    }
    assert!(mean.iter().map(|m| m * m).sum::<f64>().sqrt() < 0.05);
    let one = random_config(2, 1, 42).unwrap();
    assert!((one.point(0).iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-15);
}

#[test]
fn descent_starting_at_the_600_cell_stops_immediately() {
    let settings = DescentSettings { gradient_tolerance: 1e-9, ..Default::default() };
    let r = gradient_descent(&cell600(), &PotentialSpec::Harmonic, &settings).unwrap();
    assert!(r.converged);
    assert!(r.iterations <= 2);
    assert!((r.energy - 5395.0).abs() < 1e-8);
}

#[test]
fn accepted_steps_never_raise_the_energy() {
    let start = random_config(4, 20, 11).unwrap();
    let mut energies = Vec::new();
    let settings = DescentSettings { gradient_tolerance: 1e-8, ..Default::default() };
    let r = gradient_descent_observed(&start, &PotentialSpec::Harmonic, &settings, |s| energies.push(s.energy))
        .unwrap();
    assert!(r.converged);
    assert!(energies.len() > 10);
    assert!(energies.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn descent_is_deterministic() {
    let start = random_config(5, 16, 2).unwrap();
    let settings = DescentSettings::search();
    let a = gradient_descent(&start, &PotentialSpec::TruncatedPower(4), &settings).unwrap();
    let b = gradient_descent(&start, &PotentialSpec::TruncatedPower(4), &settings).unwrap();
    assert_eq!(a, b);
}

#[test]
fn polish_recovers_the_600_cell() {
    let c = cell600();
    let noise = common::random_tangent(&c, 5);
    let scale = 1e-4 / noise.iter().map(|x| x * x).sum::<f64>().sqrt();
    let noisy = common::retract(&c, &noise, scale);
    let r = newton_polish(&noisy, &PotentialSpec::Harmonic).unwrap();
    assert!(r.converged);
    assert!(r.gradient_norm <= 1e-13 * 5395.0);
    assert!((r.energy - 5395.0).abs() <= 1e-12, "{}", r.energy);
}

#[test]
fn polish_fixes_an_exact_critical_point() {
    let r = newton_polish(&cross_polytope(4).unwrap(), &PotentialSpec::Harmonic).unwrap();
    assert!(r.converged);
    assert!(r.iterations <= 1);
}

#[test]
fn polish_reaches_the_rare_27_point_minimum() {
    let fixture = minimum_27_in_6_112736();
    let noise = common::random_tangent(&fixture, 9);
    let scale = 1e-3 / noise.iter().map(|x| x * x).sum::<f64>().sqrt();
    let start = common::retract(&fixture, &noise, scale);
    let settings = DescentSettings { gradient_tolerance: 1e-5, ..Default::default() };
    let rough = gradient_descent(&start, &PotentialSpec::Harmonic, &settings).unwrap();
    assert!(rough.converged);
    let before = rough.gradient_norm;
    let r = newton_polish(&rough.config, &PotentialSpec::Harmonic).unwrap();
    assert!(r.gradient_norm <= before);
    assert!((r.energy - 112.7360209988).abs() <= 1e-9, "{}", r.energy);
}

#[test]
fn random_27_point_trials_land_on_known_minima() {
    let report = run_search(6, 27, PotentialSpec::Harmonic, 1000, 42, &DescentSettings::search()).unwrap();
    let known: usize = report
        .records
        .iter()
        .filter(|r| MINIMA_27_IN_6.iter().any(|m| (m.energy - r.energy).abs() < 1e-6))
        .map(|r| r.occurrences)
        .sum();
    assert!(known >= 990, "{known} of 1000");
}

#[test]
fn most_120_point_trials_reach_the_600_cell() {
    let settings = DescentSettings::search();
    let hits = (1..=100u64)
        .filter(|&seed| {
            let start = random_config(4, 120, seed).unwrap();
            gradient_descent(&start, &PotentialSpec::Harmonic, &settings)
                .map(|r| r.converged && (r.energy - 5395.0).abs() < 1e-6)
                .unwrap_or(false)
        })
        .count();
    assert!(hits >= 75, "{hits} of 100");
}

#[test]
fn degenerate_nine_point_minimum_converges_slowly() {
    let settings = DescentSettings { gradient_tolerance: 1e-10, max_iterations: 200_000, ..Default::default() };
    let median_iterations = |count: usize| {
        let mut its: Vec<usize> = (0..50u64)
            .map(|seed| {
                let start = random_config(4, count, seed).unwrap();
                gradient_descent(&start, &PotentialSpec::Harmonic, &settings).unwrap().iterations
            })
            .collect();
        its.sort_unstable();
        its[25]
    };
    let (nine, eight) = (median_iterations(9), median_iterations(8));
    assert!(nine >= 2 * eight, "median iterations {nine} for 9 points vs {eight} for 8");
}

#[test]
fn catalog_optimum_is_a_critical_point() {
    let c = build_catalog(&CatalogEntry::named("cell24_24_4").unwrap()).unwrap();
    let g = riemannian_gradient(&c, &PotentialSpec::InversePower(2.0)).unwrap();
    assert!(g.sup_norm() < 1e-10);
}
