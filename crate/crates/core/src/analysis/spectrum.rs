//! Distance classes, balancedness and parameter counts.

use nalgebra::DMatrix;

use crate::config::{dot, PointConfig};

/// Default clustering tolerance on squared distances.
pub const DEFAULT_CLUSTER_TOLERANCE: f64 = 1e-6;

/// One cluster of squared distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceClass {
    /// Mean squared distance of the members.
    pub squared_distance: f64,
    pub multiplicity: usize,
    /// Pairs `(i, j)` with `i < j`.
    pub pairs: Vec<(usize, usize)>,
}

impl DistanceClass {
    pub fn inner_product(&self) -> f64 {
        1.0 - self.squared_distance / 2.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceSpectrum {
    /// Classes in increasing order of distance.
    pub classes: Vec<DistanceClass>,
    pub tolerance: f64,
    /// Set when two representatives lie within ten times the tolerance.
    pub ambiguous: bool,
}

impl DistanceSpectrum {
    pub fn squared_distances(&self) -> Vec<f64> {
        self.classes.iter().map(|c| c.squared_distance).collect()
    }

    pub fn inner_products(&self) -> Vec<f64> {
        self.classes.iter().map(DistanceClass::inner_product).collect()
    }

    /// `N x N` matrix of class indices; the diagonal holds `usize::MAX`.
    pub fn class_matrix(&self, count: usize) -> Vec<Vec<usize>> {
        let mut m = vec![vec![usize::MAX; count]; count];
        for (k, class) in self.classes.iter().enumerate() {
            for &(i, j) in &class.pairs {
                m[i][j] = k;
                m[j][i] = k;
            }
        }
        m
    }
}

/// Single-linkage clustering of the pairwise squared distances: sorted values
/// separated by more than `tol` start a new class.
pub fn distance_spectrum(config: &PointConfig, tol: f64) -> DistanceSpectrum {
    let n = config.len();
    let mut all: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            all.push((config.squared_distance(i, j), i, j));
        }
    }
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut classes: Vec<DistanceClass> = Vec::new();
    let mut sum = 0.0;
    let mut last = f64::NEG_INFINITY;
    for (d, i, j) in all {
        if d - last > tol || classes.is_empty() {
            if let Some(c) = classes.last_mut() {
                c.squared_distance = sum / c.multiplicity as f64;
            }
            classes.push(DistanceClass { squared_distance: d, multiplicity: 0, pairs: Vec::new() });
            sum = 0.0;
        }
        let c = classes.last_mut().expect("pushed above");
        c.multiplicity += 1;
        c.pairs.push((i, j));
        sum += d;
        last = d;
    }
    if let Some(c) = classes.last_mut() {
        c.squared_distance = sum / c.multiplicity as f64;
    }
    let ambiguous = classes.windows(2).any(|w| w[1].squared_distance - w[0].squared_distance <= 10.0 * tol);
    DistanceSpectrum { classes, tolerance: tol, ambiguous }
}

/// Outcome of the balancedness test.
#[derive(Debug, Clone, PartialEq)]
pub struct Balance {
    pub balanced: bool,
    /// A point and a squared distance whose class sum has a tangential part.
    pub witness: Option<(usize, f64)>,
    /// Largest tangential norm seen.
    pub max_residual: f64,
}

/// Per class, the tangential part at every point of the sum of the points in
/// that class, flattened to length `nN`.
fn class_forces(config: &PointConfig, spectrum: &DistanceSpectrum) -> Vec<Vec<f64>> {
    let dim = config.dim();
    spectrum
        .classes
        .iter()
        .map(|class| {
            let mut f = vec![0.0; dim * config.len()];
            for &(i, j) in &class.pairs {
                for k in 0..dim {
                    f[i * dim + k] += config.point(j)[k];
                    f[j * dim + k] += config.point(i)[k];
                }
            }
            for i in 0..config.len() {
                let x = config.point(i);
                let block = &mut f[i * dim..(i + 1) * dim];
                let r = dot(block, x);
                for k in 0..dim {
                    block[k] -= r * x[k];
                }
            }
            f
        })
        .collect()
}

/// Whether, for every point `x` and distance class, the sum of the points in
/// that class is a multiple of `x` up to `tol` in its tangential part.
pub fn is_balanced(config: &PointConfig, tol: f64) -> Balance {
    let spectrum = distance_spectrum(config, DEFAULT_CLUSTER_TOLERANCE);
    let dim = config.dim();
    let mut out = Balance { balanced: true, witness: None, max_residual: 0.0 };
    for (class, f) in spectrum.classes.iter().zip(class_forces(config, &spectrum)) {
        for i in 0..config.len() {
            let r = dot(&f[i * dim..(i + 1) * dim], &f[i * dim..(i + 1) * dim]).sqrt();
            if r > out.max_residual {
                out.max_residual = r;
            }
            if r > tol && out.balanced {
                out.balanced = false;
                out.witness = Some((i, class.squared_distance));
            }
        }
    }
    out
}

/// Rank of the span of the per-class tangential force fields; singular values
/// count when they exceed `tol * max(largest, 1)`.
pub fn parameter_count(config: &PointConfig, tol: f64) -> usize {
    let spectrum = distance_spectrum(config, DEFAULT_CLUSTER_TOLERANCE);
    let forces = class_forces(config, &spectrum);
    if forces.is_empty() {
        return 0;
    }
    let cols = forces[0].len();
    let m = DMatrix::from_fn(forces.len(), cols, |r, c| forces[r][c]);
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol * top.max(1.0)).count()
}
