#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use spherical_optima::{energy, riemannian_gradient, PointConfig, PotentialSpec};

/// A Haar-ish random orthogonal matrix from the QR factorization of a Gaussian matrix.
pub fn random_orthogonal(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = m.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// A random tangent vector at `config`, flattened like its coordinates.
pub fn random_tangent(config: &PointConfig, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = config.dim();
    let mut v: Vec<f64> = (0..config.coords().len()).map(|_| rng.sample(StandardNormal)).collect();
    for (i, p) in config.points().enumerate() {
        let w = &mut v[i * d..(i + 1) * d];
        let dot: f64 = w.iter().zip(p).map(|(a, b)| a * b).sum();
        w.iter_mut().zip(p).for_each(|(a, b)| *a -= dot * b);
    }
    v
}

/// Moves each point along `v` by `t` and renormalizes.
pub fn retract(config: &PointConfig, v: &[f64], t: f64) -> PointConfig {
    let d = config.dim();
    let rows: Vec<Vec<f64>> = config
        .points()
        .enumerate()
        .map(|(i, p)| p.iter().zip(&v[i * d..(i + 1) * d]).map(|(a, b)| a + t * b).collect())
        .collect();
    PointConfig::normalized(d, &rows).unwrap()
}

/// Relative error between the gradient's directional derivative and a five-point central difference.
pub fn gradient_fd_error(config: &PointConfig, potential: &PotentialSpec, seed: u64) -> f64 {
    let g = riemannian_gradient(config, potential).unwrap();
    // push along the gradient so the directional derivative is far from zero
    let mut v = random_tangent(config, seed);
    let gn = g.norm().max(1e-300);
    let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for (a, b) in v.iter_mut().zip(g.components()) {
        *a = *a / vn + b / gn;
    }
    let exact: f64 = v.iter().zip(g.components()).map(|(a, b)| a * b).sum();
    // close pairs make the energy stiff, so shrink the step with the minimal distance
    let h = 1e-5 * config.min_squared_distance().sqrt().min(1.0);
    let e = |t: f64| energy(&retract(config, &v, t), potential).unwrap();
    let fd = (8.0 * (e(h) - e(-h)) - (e(2.0 * h) - e(-2.0 * h))) / (12.0 * h);
    (fd - exact).abs() / exact.abs().max(1e-12)
}

pub fn all_potentials() -> Vec<PotentialSpec> {
    vec![
        PotentialSpec::Harmonic,
        PotentialSpec::InversePower(0.5),
        PotentialSpec::InversePower(1.0),
        PotentialSpec::InversePower(3.0),
        PotentialSpec::TruncatedPower(1),
        PotentialSpec::TruncatedPower(3),
        PotentialSpec::TruncatedPower(8),
        PotentialSpec::Logarithmic,
    ]
}

/// Squared distances of all pairs, sorted.
pub fn sorted_squared_distances(config: &PointConfig) -> Vec<f64> {
    let n = config.len();
    let mut d: Vec<f64> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| config.squared_distance(i, j)).collect();
    d.sort_by(f64::total_cmp);
    d
}
