//! Spherical design strength.

use crate::config::PointConfig;

/// Normalized Gegenbauer values `G_0(t), ..., G_d(t)` for `S^{n-1}`, `G_k(1) = 1`.
pub fn gegenbauer_values(dim: usize, degree: usize, t: f64) -> Vec<f64> {
    let mut g = Vec::with_capacity(degree + 1);
    g.push(1.0);
    if degree >= 1 {
        g.push(t);
    }
    let m = dim as f64 - 2.0;
    for k in 1..degree {
        let kf = k as f64;
        let next = ((2.0 * kf + m) * t * g[k] - kf * g[k - 1]) / (kf + m);
        g.push(next);
    }
    g
}

/// `sum_{x, y} G_k(<x, y>)` for `k = 0..=degree`.
pub fn gegenbauer_sums(config: &PointConfig, degree: usize) -> Vec<f64> {
    let n = config.len();
    // the diagonal contributes G_k(1) = 1 per point
    let mut sums = vec![n as f64; degree + 1];
    for i in 0..n {
        for j in i + 1..n {
            let t = config.inner(i, j).clamp(-1.0, 1.0);
            for (s, g) in sums.iter_mut().zip(gegenbauer_values(config.dim(), degree, t)) {
                *s += 2.0 * g;
            }
        }
    }
    sums
}

/// Largest `t <= max_degree` such that the degree `1..=t` Gegenbauer sums all
/// vanish to within `1e-8 N^2`.
pub fn design_strength(config: &PointConfig, max_degree: usize) -> usize {
    let n = config.len() as f64;
    let sums = gegenbauer_sums(config, max_degree);
    sums.iter().skip(1).take_while(|s| s.abs() <= 1e-8 * n * n).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_40_in_10, build_64_in_14_gram, cell600, cross_polytope, icosahedron, ngon};
    use nalgebra::DMatrix;

    #[test]
    fn legendre_and_chebyshev() {
        let t = 0.3_f64;
        let p = gegenbauer_values(3, 3, t);
        assert!((p[2] - (3.0 * t * t - 1.0) / 2.0).abs() < 1e-15);
        assert!((p[3] - (5.0 * t.powi(3) - 3.0 * t) / 2.0).abs() < 1e-15);
        let c = gegenbauer_values(2, 6, t);
        for (k, v) in c.iter().enumerate() {
            assert!((v - (k as f64 * t.acos()).cos()).abs() < 1e-13);
        }
        for dim in 2..12 {
            for v in gegenbauer_values(dim, 10, 1.0) {
                assert!((v - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn polygon_strength() {
        for n in 3..12 {
            assert_eq!(design_strength(&ngon(n).unwrap(), n - 1), n - 1);
            assert_eq!(design_strength(&ngon(n).unwrap(), n + 3), n - 1);
        }
    }

    #[test]
    fn known_strengths() {
        assert_eq!(design_strength(&cross_polytope(4).unwrap(), 10), 3);
        assert_eq!(design_strength(&icosahedron(), 10), 5);
        assert_eq!(design_strength(&cell600(), 20), 11);
        let forty = build_40_in_10();
        assert_eq!(design_strength(&forty, 8), 3);
        assert!(gegenbauer_sums(&forty, 4)[4].abs() > 1.0);
        assert_eq!(design_strength(&build_64_in_14_gram(), 8), 3);
    }

    #[test]
    fn rotation_invariance() {
        let c = icosahedron();
        let q = DMatrix::from_row_slice(3, 3, &[0.0, 0.6, 0.8, 1.0, 0.0, 0.0, 0.0, 0.8, -0.6]);
        assert_eq!(design_strength(&c.transformed(&q).unwrap(), 10), 5);
    }
}
