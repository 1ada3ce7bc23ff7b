use std::f64::consts::PI;

use super::unit_rows;
use crate::config::{dot, PointConfig};
use crate::error::{Error, Result};

/// Golden ratio.
pub(crate) const PHI: f64 = 1.618_033_988_749_895;

/// `k` unit vectors in `R^(k-1)` with pairwise inner products `-1/(k-1)`, for `k >= 2`.
///
/// Coordinates of `e_i - centroid` in the Helmert basis of the sum-zero hyperplane.
pub fn regular_simplex(k: usize) -> Vec<Vec<f64>> {
    assert!(k >= 2, "a regular simplex needs at least two vertices");
    let scale = (k as f64 / (k as f64 - 1.0)).sqrt();
    (0..k)
        .map(|i| {
            (1..k)
                .map(|m| {
                    // h_m = (1, .., 1, -m, 0, ..) / sqrt(m (m + 1)), m ones
                    let mf = m as f64;
                    let c = match i.cmp(&m) {
                        std::cmp::Ordering::Less => 1.0,
                        std::cmp::Ordering::Equal => -mf,
                        std::cmp::Ordering::Greater => 0.0,
                    };
                    scale * c / (mf * (mf + 1.0)).sqrt()
                })
                .collect()
        })
        .collect()
}

/// A regular simplex of `count <= n + 1` points in `R^n`.
pub fn simplex_config(n: usize, count: usize) -> Result<PointConfig> {
    if n < 2 || count < 2 || count > n + 1 {
        return Err(Error::ParameterOutOfRange(format!("simplex needs 2 <= N <= n + 1, got (n, N) = ({n}, {count})")));
    }
    let rows = regular_simplex(count)
        .into_iter()
        .map(|mut r| {
            r.resize(n, 0.0);
            r
        })
        .collect();
    Ok(unit_rows(n, rows))
}

/// `+-e_i` in `R^n`.
pub fn cross_polytope(n: usize) -> Result<PointConfig> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(format!("cross polytope needs n >= 2, got {n}")));
    }
    let mut rows = Vec::with_capacity(2 * n);
    for i in 0..n {
        for s in [1.0, -1.0] {
            let mut r = vec![0.0; n];
            r[i] = s;
            rows.push(r);
        }
    }
    Ok(unit_rows(n, rows))
}

/// Regular `N`-gon in the plane.
pub fn ngon(count: usize) -> Result<PointConfig> {
    if count < 1 {
        return Err(Error::ParameterOutOfRange("N-gon needs N >= 1".into()));
    }
    let rows = (0..count)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / count as f64;
            vec![t.cos(), t.sin()]
        })
        .collect();
    Ok(unit_rows(2, rows))
}

/// Cyclic permutations of `(0, +-1, +-phi)`.
pub fn icosahedron() -> PointConfig {
    let mut rows = Vec::new();
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            let (a, b) = (s1, s2 * PHI);
            rows.push(vec![0.0, a, b]);
            rows.push(vec![a, b, 0.0]);
            rows.push(vec![b, 0.0, a]);
        }
    }
    unit_rows(3, rows)
}

/// Face centers of the icosahedron: the dual dodecahedron.
pub(crate) fn dual_dodecahedron() -> PointConfig {
    let ico = icosahedron();
    let adjacent = 1.0 / 5f64.sqrt();
    let near = |i: usize, j: usize| (ico.inner(i, j) - adjacent).abs() < 1e-9;
    let mut rows = Vec::new();
    for i in 0..12 {
        for j in i + 1..12 {
            for k in j + 1..12 {
                if near(i, j) && near(j, k) && near(i, k) {
                    rows.push((0..3).map(|c| ico.point(i)[c] + ico.point(j)[c] + ico.point(k)[c]).collect());
                }
            }
        }
    }
    unit_rows(3, rows)
}

/// The 24 roots of `D4`, `(+-1, +-1, 0, 0)/sqrt(2)` in all positions.
pub fn cell24() -> PointConfig {
    let mut rows = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for si in [1.0, -1.0] {
                for sj in [1.0, -1.0] {
                    let mut r = vec![0.0; 4];
                    r[i] = si;
                    r[j] = sj;
                    rows.push(r);
                }
            }
        }
    }
    unit_rows(4, rows)
}

/// The 24-cell dual to [`cell24`]: `+-e_i` and `(+-1/2, .., +-1/2)`.
pub(crate) fn cell24_dual() -> PointConfig {
    let mut rows = Vec::new();
    for i in 0..4 {
        for s in [1.0, -1.0] {
            let mut r = vec![0.0; 4];
            r[i] = s;
            rows.push(r);
        }
    }
    for mask in 0..16u32 {
        rows.push((0..4).map(|k| if mask >> k & 1 == 1 { -0.5 } else { 0.5 }).collect());
    }
    unit_rows(4, rows)
}

fn is_even_permutation(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Unit quaternions of the binary icosahedral group, in the standard coordinates.
fn binary_icosahedral() -> Vec<[f64; 4]> {
    let mut out = Vec::with_capacity(120);
    for i in 0..4 {
        for s in [1.0, -1.0] {
            let mut q = [0.0; 4];
            q[i] = s;
            out.push(q);
        }
    }
    for mask in 0..16u32 {
        let mut q = [0.0; 4];
        for (k, c) in q.iter_mut().enumerate() {
            *c = if mask >> k & 1 == 1 { -0.5 } else { 0.5 };
        }
        out.push(q);
    }
    // even permutations of (+-phi, +-1, +-1/phi, 0) / 2
    let base = [PHI / 2.0, 0.5, 0.5 / PHI, 0.0];
    let mut perms = Vec::new();
    permutations(&mut [0, 1, 2, 3], 0, &mut perms);
    for p in perms.into_iter().filter(|p| is_even_permutation(p)) {
        for mask in 0..8u32 {
            let mut q = [0.0; 4];
            for (slot, &src) in p.iter().enumerate() {
                let sign = if src < 3 && mask >> src & 1 == 1 { -1.0 } else { 1.0 };
                q[slot] = sign * base[src];
            }
            out.push(q);
        }
    }
    out
}

pub(crate) fn permutations(items: &mut [usize], k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.to_vec());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

pub(crate) fn quat_mul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn quat_conj(a: [f64; 4]) -> [f64; 4] {
    [a[0], -a[1], -a[2], -a[3]]
}

/// The regular 600-cell, conjugated so that left multiplication by the unit
/// complex number `exp(i pi / 5)` permutes its vertices.
///
/// Under the identification `(a, b, c, d) -> (a + bi, c + di)` the vertex set is
/// then a union of twelve regular 10-gons lying in complex lines.
pub fn cell600() -> PointConfig {
    let group = binary_icosahedral();
    // axis of the order-10 element (phi, 1, 1/phi, 0) / 2
    let axis = {
        let v = [1.0, 1.0 / PHI, 0.0];
        let n = dot(&v, &v).sqrt();
        [v[0] / n, v[1] / n, v[2] / n]
    };
    // u = (1 + <a, b>, a x b), normalized, rotates a onto b = i under x -> u x u*
    let mut u = [1.0 + axis[0], 0.0, axis[2], -axis[1]];
    let un = dot(&u, &u).sqrt();
    u.iter_mut().for_each(|c| *c /= un);
    let rows = group.into_iter().map(|q| quat_mul(quat_mul(u, q), quat_conj(u)).to_vec()).collect();
    unit_rows(4, rows)
}

/// `(+-1, .., +-1)/sqrt(n)` with an even number of minus signs.
pub fn hemicube(n: usize) -> Result<PointConfig> {
    if !(2..=20).contains(&n) {
        return Err(Error::ParameterOutOfRange(format!("hemicube dimension {n} outside 2..=20")));
    }
    let rows = (0..1u32 << n)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| (0..n).map(|k| if m >> k & 1 == 1 { -1.0 } else { 1.0 }).collect())
        .collect();
    Ok(unit_rows(n, rows))
}
