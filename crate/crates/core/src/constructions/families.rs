//! Parametric and combinatorial constructions: cubic-root codes, diplo-simplices
//! and their perturbations, the 40-point code in `R^10` and its competitor
//! family, and the 96-point code in `R^9`.

use super::polytopes::{permutations, regular_simplex};
use super::{bisect, unit_rows};
use crate::config::PointConfig;
use crate::error::{Error, Result};

/// The root in `(0, 1/n)` of `(n^3 - 4n^2 + 4n) x^3 - n^2 x^2 - n x + 1`.
pub fn c_n_alpha(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(format!("C_n needs n >= 2, got {n}")));
    }
    let m = n as f64;
    let cubic = |x: f64| (((m * m * m - 4.0 * m * m + 4.0 * m) * x - m * m) * x - m) * x + 1.0;
    Ok(bisect(cubic, 0.0, 1.0 / m, 1e-16))
}

/// The `2n + 1`-point code: a pole and two dual simplices on parallel hyperplanes.
pub fn build_c_n(n: usize) -> Result<PointConfig> {
    let alpha = c_n_alpha(n)?;
    let m = n as f64;
    let simplex = regular_simplex(n);
    let near = (1.0 - alpha * alpha).sqrt();
    let h = -(((m - 1.0) * alpha + 1.0) / m).sqrt();
    let r = (1.0 - h * h).sqrt();
    let mut rows = Vec::with_capacity(2 * n + 1);
    let mut pole = vec![0.0; n];
    pole[0] = 1.0;
    rows.push(pole);
    for u in &simplex {
        rows.push(std::iter::once(alpha).chain(u.iter().map(|c| near * c)).collect());
    }
    for u in &simplex {
        rows.push(std::iter::once(h).chain(u.iter().map(|c| -r * c)).collect());
    }
    Ok(unit_rows(n, rows))
}

/// Parameters of the perturbed diplo-simplex.
///
/// For odd `n = 2k - 1`, `beta` rotates the negated face and `gamma` is unused.
/// For even `n = 2k`, `beta` is the offset along `z` and `gamma` is the rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiploParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl DiploParams {
    /// The parameters at which the construction is the diplo-simplex itself.
    pub fn unperturbed(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::ParameterOutOfRange(format!("diplo-simplex needs n >= 2, got {n}")));
        }
        let k = ((n + 1) / 2) as f64;
        Ok(if n % 2 == 1 {
            DiploParams { alpha: ((2.0 * k - 2.0) / (2.0 * k - 1.0)).sqrt(), beta: 0.0, gamma: 0.0 }
        } else {
            DiploParams {
                alpha: ((2.0 * k + 1.0) * (2.0 * k - 2.0)).sqrt() / (2.0 * k),
                beta: 1.0 / (2.0 * k),
                gamma: 0.0,
            }
        })
    }
}

/// The simplex and its antipode, `2n + 2` points in `R^n`.
pub fn build_diplo_simplex(n: usize) -> Result<PointConfig> {
    perturb_diplo_simplex(n, DiploParams::unperturbed(n)?)
}

/// The face-rotating perturbation of the diplo-simplex.
///
/// In the plane the simplices are empty and `alpha` must be zero.
pub fn perturb_diplo_simplex(n: usize, p: DiploParams) -> Result<PointConfig> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(format!("diplo-simplex needs n >= 2, got {n}")));
    }
    let bad = |m: String| Err(Error::ParameterOutOfRange(m));
    let k = (n + 1) / 2;
    let odd = n % 2 == 1;
    let in_unit = |x: f64| (0.0..=1.0).contains(&x);
    if !(in_unit(p.alpha) && in_unit(p.beta.abs()) && in_unit(p.gamma)) {
        return bad(format!("parameters {p:?} outside [0, 1]"));
    }
    if n == 2 && p.alpha != 0.0 {
        return bad("the planar diplo-simplex has no simplex directions; alpha must be 0".into());
    }
    if !odd && p.alpha * p.alpha + p.beta * p.beta > 1.0 {
        return bad(format!("alpha^2 + beta^2 > 1 for {p:?}"));
    }

    let simplex: Vec<Vec<f64>> = if k >= 2 { regular_simplex(k) } else { vec![vec![]] };
    let d = k - 1;
    let t_idx = 2 * d;
    let z_idx = 2 * d + 1;
    let embed = |cv: f64, cw: f64, i: usize, ct: f64, cz: f64| -> Vec<f64> {
        let mut r = vec![0.0; n];
        for c in 0..d {
            r[c] = cv * simplex[i][c];
            r[d + c] = cw * simplex[i][c];
        }
        r[t_idx] = ct;
        if !odd {
            r[z_idx] = cz;
        }
        r
    };
    let a = p.alpha;
    let mut rows = Vec::with_capacity(2 * n + 2);
    if odd {
        let s = (1.0 - a * a).sqrt();
        let c = (1.0 - p.beta * p.beta).sqrt();
        for i in 0..k {
            rows.push(embed(a, 0.0, i, s, 0.0));
            rows.push(embed(0.0, a, i, s, 0.0));
            rows.push(embed(-a * p.beta, -a * c, i, -s, 0.0));
            rows.push(embed(-a * c, a * p.beta, i, -s, 0.0));
        }
    } else {
        let b = p.beta;
        let s = (1.0 - a * a - b * b).sqrt();
        let c = (1.0 - p.gamma * p.gamma).sqrt();
        let mut z = vec![0.0; n];
        z[z_idx] = 1.0;
        rows.push(z.clone());
        rows.push(z.iter().map(|x| -x).collect());
        for i in 0..k {
            rows.push(embed(a, 0.0, i, s, b));
            rows.push(embed(0.0, a, i, s, -b));
            rows.push(embed(-a * p.gamma, -a * c, i, -s, b));
            rows.push(embed(-a * c, a * p.gamma, i, -s, -b));
        }
    }
    Ok(unit_rows(n, rows))
}

/// All `(signs, type)` vectors in the 40-point code in `R^10`.
///
/// Coordinates are indexed by the 10 pairs `{i, j}` of `Z/5` in lexicographic
/// order. A vector of type `i` has entries `+-1/sqrt(6)` exactly on the pairs
/// avoiding `i`; negative entries form a graph on the other four residues, with
/// `e` edges and degrees `d_j`, and the vector belongs to the code iff
/// `d_{i+1} = d_{i+2} = e` and `d_{i-1} = d_{i-2} != e` mod 2.
pub fn build_40_in_10() -> PointConfig {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    let s = 1.0 / 6f64.sqrt();
    let mut rows = Vec::with_capacity(40);
    for i in 0..5 {
        let avoid: Vec<usize> = (0..10).filter(|&p| pairs[p].0 != i && pairs[p].1 != i).collect();
        for signs in 0..64u32 {
            let mut deg = [0u32; 5];
            let mut e = 0;
            for (bit, &p) in avoid.iter().enumerate() {
                if signs >> (5 - bit) & 1 == 1 {
                    e += 1;
                    deg[pairs[p].0] += 1;
                    deg[pairs[p].1] += 1;
                }
            }
            let parity = |j: usize| deg[(i + j) % 5] % 2;
            let e = e % 2;
            if parity(1) == e && parity(2) == e && parity(4) != e && parity(3) != e {
                let mut r = vec![0.0; 10];
                for (bit, &p) in avoid.iter().enumerate() {
                    r[p] = if signs >> (5 - bit) & 1 == 1 { -s } else { s };
                }
                rows.push(r);
            }
        }
    }
    unit_rows(10, rows)
}

/// Largest admissible competitor parameter, `1/sqrt(27)`.
pub const COMPETITOR_ALPHA_MAX: f64 = 0.192_450_089_729_875_25;

/// The one-parameter competitor family of 40 points in `R^10`, `0 < alpha <= 1/sqrt(27)`.
///
/// A 4x4 grid `t_i (x) t_j` of two tetrahedra in `R^9`, plus one point per
/// permutation `s` of four symbols with projection `-9 alpha / 4 sum_i t_i (x) t_s(i)`,
/// above the grid for even `s` and below it for odd `s`.
pub fn build_40_in_10_competitor(alpha: f64) -> Result<PointConfig> {
    if !(alpha > 0.0 && alpha <= COMPETITOR_ALPHA_MAX * (1.0 + 1e-12)) {
        return Err(Error::ParameterOutOfRange(format!("need 0 < alpha <= 1/sqrt(27), got {alpha}")));
    }
    let t = regular_simplex(4);
    let tensor = |i: usize, j: usize| -> Vec<f64> {
        let mut v = vec![0.0; 10];
        for a in 0..3 {
            for b in 0..3 {
                v[3 * a + b] = t[i][a] * t[j][b];
            }
        }
        v
    };
    let mut rows = Vec::with_capacity(40);
    for i in 0..4 {
        for j in 0..4 {
            rows.push(tensor(i, j));
        }
    }
    let height = (1.0 - 27.0 * alpha * alpha).max(0.0).sqrt();
    let lambda = -9.0 * alpha / 4.0;
    let mut perms = Vec::new();
    permutations(&mut [0, 1, 2, 3], 0, &mut perms);
    perms.sort();
    for p in perms {
        let mut v = vec![0.0; 10];
        for (i, &pi) in p.iter().enumerate() {
            for (c, x) in tensor(i, pi).iter().enumerate() {
                v[c] += lambda * x;
            }
        }
        let inversions = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
        v[9] = if inversions % 2 == 0 { height } else { -height };
        rows.push(v);
    }
    Ok(unit_rows(10, rows))
}

/// The 96-point code in `R^9`: three orthogonal tetrahedra, their negatives, and
/// 72 points `x = 1/4 sum eps_i v_i` whose per-tetrahedron sign patterns have
/// two plus signs and `Z/3` labels summing to zero.
pub fn build_96_in_9() -> PointConfig {
    let t = regular_simplex(4);
    let basic = |m: usize, i: usize| -> Vec<f64> {
        let mut v = vec![0.0; 9];
        v[3 * m..3 * m + 3].copy_from_slice(&t[i]);
        v
    };
    let mut rows = Vec::with_capacity(96);
    for sign in [1.0, -1.0] {
        for m in 0..3 {
            for i in 0..4 {
                rows.push(basic(m, i).iter().map(|x| sign * x).collect());
            }
        }
    }
    // label 0, 1, -1 (stored as 0, 1, 2)
    let patterns: [[f64; 4]; 3] = [[1.0, 1.0, -1.0, -1.0], [1.0, -1.0, 1.0, -1.0], [1.0, -1.0, -1.0, 1.0]];
    for l0 in 0..3 {
        for l1 in 0..3 {
            let l2 = (6 - l0 - l1) % 3;
            for signs in 0..8u32 {
                let mut v = vec![0.0; 9];
                for (m, &label) in [l0, l1, l2].iter().enumerate() {
                    let s = if signs >> m & 1 == 1 { -1.0 } else { 1.0 };
                    for i in 0..4 {
                        for (c, x) in basic(m, i).iter().enumerate() {
                            v[c] += 0.25 * s * patterns[label][i] * x;
                        }
                    }
                }
                rows.push(v);
            }
        }
    }
    unit_rows(9, rows)
}
