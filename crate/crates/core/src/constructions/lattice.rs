//! Root systems of `E8`, `E7`, `E6` and configurations cut out of them.

use super::unit_rows;
use crate::config::{dot, PointConfig};

/// First fixed root; `E7` is its orthogonal complement in `E8`.
const ROOT_A: [f64; 8] = [1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
/// Second fixed root with `<a, b> = -1`; `a` and `b` span an `A2`.
const ROOT_B: [f64; 8] = [-1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
/// A root with `<x, a> = 1`.
const ROOT_X: [f64; 8] = [1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0];

/// The 240 roots of `E8` (squared norm 2): `+-e_i +- e_j` and
/// `(+-1/2)^8` with an even number of minus signs.
pub fn e8_roots() -> Vec<[f64; 8]> {
    let mut roots = Vec::with_capacity(240);
    for i in 0..8 {
        for j in i + 1..8 {
            for si in [1.0, -1.0] {
                for sj in [1.0, -1.0] {
                    let mut r = [0.0; 8];
                    r[i] = si;
                    r[j] = sj;
                    roots.push(r);
                }
            }
        }
    }
    for mask in 0..256u32 {
        if mask.count_ones() % 2 == 0 {
            let mut r = [0.5; 8];
            for (k, c) in r.iter_mut().enumerate() {
                if mask >> k & 1 == 1 {
                    *c = -0.5;
                }
            }
            roots.push(r);
        }
    }
    roots
}

fn inner8(a: &[f64; 8], b: &[f64; 8]) -> f64 {
    dot(a, b)
}

/// The 126 roots of `E8` orthogonal to a fixed root.
pub fn e7_roots() -> Vec<[f64; 8]> {
    e8_roots().into_iter().filter(|r| inner8(r, &ROOT_A) == 0.0).collect()
}

/// The 72 roots of `E8` orthogonal to a fixed `A2` sublattice.
pub fn e6_roots() -> Vec<[f64; 8]> {
    e7_roots().into_iter().filter(|r| inner8(r, &ROOT_B) == 0.0).collect()
}

/// Orthonormal basis of `span(vectors)` by Gram-Schmidt.
fn orthonormal(vectors: &[[f64; 8]]) -> Vec<[f64; 8]> {
    let mut basis: Vec<[f64; 8]> = Vec::new();
    for v in vectors {
        let mut w = *v;
        for b in &basis {
            let c = inner8(&w, b);
            for k in 0..8 {
                w[k] -= c * b[k];
            }
        }
        let n = inner8(&w, &w).sqrt();
        basis.push(w.map(|x| x / n));
    }
    basis
}

/// Projects onto the orthogonal complement of `span(against)` and writes
/// coordinates in an orthonormal basis of that complement.
fn project_out(points: &[[f64; 8]], against: &[[f64; 8]]) -> (usize, Vec<Vec<f64>>) {
    let removed = orthonormal(against);
    // complete to a basis of R^8 with standard vectors
    let mut all = removed.clone();
    for k in 0..8 {
        let mut e = [0.0; 8];
        e[k] = 1.0;
        let mut w = e;
        for b in &all {
            let c = inner8(&w, b);
            for i in 0..8 {
                w[i] -= c * b[i];
            }
        }
        let n = inner8(&w, &w).sqrt();
        if n > 1e-6 {
            all.push(w.map(|x| x / n));
        }
        if all.len() == 8 {
            break;
        }
    }
    let complement = &all[removed.len()..];
    let rows = points.iter().map(|p| complement.iter().map(|b| inner8(p, b)).collect()).collect();
    (complement.len(), rows)
}

/// Drops zero rows and duplicates after normalization, keeping first occurrences.
fn normalized_distinct(dim: usize, rows: Vec<Vec<f64>>) -> PointConfig {
    let mut kept: Vec<Vec<f64>> = Vec::new();
    for r in rows {
        let n = dot(&r, &r).sqrt();
        if n < 1e-9 {
            continue;
        }
        let u: Vec<f64> = r.iter().map(|x| x / n).collect();
        if !kept.iter().any(|k| k.iter().zip(&u).all(|(a, b)| (a - b).abs() < 1e-9)) {
            kept.push(u);
        }
    }
    unit_rows(dim, kept)
}

/// `E8` roots rescaled to the unit sphere.
pub(crate) fn e8_config() -> PointConfig {
    unit_rows(8, e8_roots().iter().map(|r| r.to_vec()).collect())
}

/// The 27-point Schläfli configuration in `R^6`: roots with `<x, a> = 1`,
/// `<x, b> = 0`, projected off `span(a, b)`.
pub fn schlafli() -> PointConfig {
    let chosen: Vec<[f64; 8]> = e8_roots()
        .into_iter()
        .filter(|r| inner8(r, &ROOT_A) == 1.0 && inner8(r, &ROOT_B) == 0.0)
        .collect();
    let (dim, rows) = project_out(&chosen, &[ROOT_A, ROOT_B]);
    normalized_distinct(dim, rows)
}

/// 56 equiangular lines' worth of points in `R^7`: roots with `<x, a> = 1` projected off `a`.
pub fn equiangular_56() -> PointConfig {
    let chosen: Vec<[f64; 8]> = e8_roots().into_iter().filter(|r| inner8(r, &ROOT_A) == 1.0).collect();
    let (dim, rows) = project_out(&chosen, &[ROOT_A]);
    normalized_distinct(dim, rows)
}

/// Minimal vectors of `E7` and `E7*` on one sphere: all `E8` roots projected off a root.
pub fn e7_union() -> PointConfig {
    let (dim, rows) = project_out(&e8_roots(), &[ROOT_A]);
    normalized_distinct(dim, rows)
}

/// Minimal vectors of `E6` and `E6*` on one sphere: `E7` roots projected off a
/// minimal vector of `E7*`.
pub fn e6_union() -> PointConfig {
    let u: [f64; 8] = std::array::from_fn(|k| ROOT_X[k] - ROOT_A[k] / 2.0);
    let (dim, rows) = project_out(&e7_roots(), &[ROOT_A, u]);
    normalized_distinct(dim, rows)
}
