use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::config::PointConfig;
use crate::error::{Error, Result};

/// Eigenvalues below `-PSD_TOLERANCE` make a Gram matrix unrealizable;
/// eigenvalues above it count towards the rank.
pub const PSD_TOLERANCE: f64 = 1e-9;

/// A symmetric matrix with unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: DMatrix<f64>,
}

impl GramMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let n = entries.nrows();
        if n == 0 || entries.ncols() != n {
            return Err(Error::InvalidConfig("gram matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            if entries[(i, i)] != 1.0 {
                return Err(Error::InvalidConfig(format!("diagonal entry {i} is {}", entries[(i, i)])));
            }
            for j in 0..i {
                if (entries[(i, j)] - entries[(j, i)]).abs() > 1e-12 {
                    return Err(Error::InvalidConfig(format!("entries ({i}, {j}) and ({j}, {i}) differ")));
                }
            }
        }
        Ok(GramMatrix { entries })
    }

    /// The Gram matrix of a configuration, with the diagonal set to exactly 1.
    pub fn of(config: &PointConfig) -> Self {
        let mut entries = config.gram();
        entries.fill_diagonal(1.0);
        GramMatrix { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.entries.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// The principal submatrix on `indices`.
    pub fn submatrix(&self, indices: &[usize]) -> GramMatrix {
        let m = indices.len();
        let entries = DMatrix::from_fn(m, m, |i, j| self.entries[(indices[i], indices[j])]);
        GramMatrix { entries }
    }

    /// Builds a Gram matrix from rows of symbols, each looked up in `values`.
    fn from_pattern(rows: &[&str], values: &HashMap<char, f64>) -> Result<Self> {
        let n = rows.len();
        let mut entries = DMatrix::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            debug_assert_eq!(row.chars().count(), n);
            for (j, ch) in row.chars().enumerate() {
                entries[(i, j)] = if ch == '1' { 1.0 } else { values[&ch] };
            }
        }
        GramMatrix::new(entries)
    }
}

/// Points on `S^{n-1}` with Gram matrix `g`.
pub fn realize_from_gram(g: &GramMatrix, n: usize) -> Result<PointConfig> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("dimension {n} < 2")));
    }
    let size = g.size();
    let eig = SymmetricEigen::new(g.entries.clone());
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));

    let smallest = eig.eigenvalues[order[size - 1]];
    if smallest < -PSD_TOLERANCE {
        return Err(Error::NotPsd(smallest));
    }
    let rank = order.iter().filter(|&&k| eig.eigenvalues[k] > PSD_TOLERANCE).count();
    if rank > n {
        return Err(Error::RankTooHigh { rank, dim: n });
    }

    let mut coords = vec![0.0; size * n];
    for (c, &k) in order.iter().take(rank).enumerate() {
        let scale = eig.eigenvalues[k].sqrt();
        for i in 0..size {
            coords[i * n + c] = eig.eigenvectors[(i, k)] * scale;
        }
    }
    for row in coords.chunks_exact_mut(n) {
        let r = crate::config::norm(row);
        if r == 0.0 {
            return Err(Error::NotPsd(0.0));
        }
        row.iter_mut().for_each(|x| *x /= r);
    }
    PointConfig::from_flat(n, coords)
}

const GRAM_16_IN_5: [&str; 16] = [
    "1aaaaaabbbbbbbbb",
    "a1eeAAAdccccdcdc",
    "ae1eAAAcdcdccccd",
    "aee1AAAccdcdcdcc",
    "aAAA1eedcccdcccd",
    "aAAAe1ecdcccddcc",
    "aAAAee1ccddcccdc",
    "bdccdcc1fffggfgg",
    "bcdccdcf1fgfggfg",
    "bccdccdff1ggfggf",
    "bcdcccdfgg1fffgg",
    "bccddccgfgf1fgfg",
    "bdcccdcggfff1ggf",
    "bccdcdcfggfgg1ff",
    "bdccccdgfggfgf1f",
    "bcdcdccggfggfff1",
];

/// The two-parameter family of 16 points in `R^5`.
///
/// `A` stands for `a^2`; `c, d, e, f, g` are the derived entries.
pub fn build_gram_16_in_5(a: f64, b: f64) -> Result<GramMatrix> {
    if !(a.abs() < 1.0 && b.abs() < 1.0) {
        return Err(Error::ParameterOutOfRange(format!("need |a|, |b| < 1, got ({a}, {b})")));
    }
    let root = ((1.0 - a * a) * (1.0 - b * b) / 2.0).sqrt();
    let values = HashMap::from([
        ('a', a),
        ('b', b),
        ('A', a * a),
        ('c', a * b + 0.5 * root),
        ('d', a * b - root),
        ('e', (3.0 * a * a - 1.0) / 2.0),
        ('f', (3.0 * b * b - 1.0) / 2.0),
        ('g', (3.0 * b * b + 1.0) / 4.0),
    ]);
    GramMatrix::from_pattern(&GRAM_16_IN_5, &values)
}

const GRAM_12_IN_4_FAMILY1: [&str; 12] = [
    "1ccdbbmaamaa",
    "c1cbdbamaama",
    "cc1bbdaamaam",
    "dbb1ccmaamaa",
    "bdbc1camaama",
    "bbdcc1aamaam",
    "maamaa1ccdbb",
    "amaamac1cbdb",
    "aamaamcc1bbd",
    "maamaadbb1cc",
    "amaamabdbc1c",
    "aamaambbdcc1",
];

/// First family of 12 points in `R^4`, `0 < a < 1/2`; `m` stands for `-2a`.
pub fn build_gram_12_in_4_family1(a: f64) -> Result<GramMatrix> {
    if !(a > 0.0 && a < 0.5) {
        return Err(Error::ParameterOutOfRange(format!("need 0 < a < 1/2, got {a}")));
    }
    let values = HashMap::from([
        ('a', a),
        ('m', -2.0 * a),
        ('b', a - 1.0),
        ('c', -3.0 * a + 1.0),
        ('d', 4.0 * a - 1.0),
    ]);
    GramMatrix::from_pattern(&GRAM_12_IN_4_FAMILY1, &values)
}

const GRAM_12_IN_4_FAMILY2: [&str; 12] = [
    "1tttmaaamaaa",
    "t1ttamaaamaa",
    "tt1taamaaama",
    "ttt1aaamaaam",
    "maaa1bbbdccc",
    "amaab1bbcdcc",
    "aamabb1bccdc",
    "aaambbb1cccd",
    "maaadccc1bbb",
    "amaacdccb1bb",
    "aamaccdcbb1b",
    "aaamcccdbbb1",
];

/// Second family of 12 points in `R^4`, `0 < a < 1/3`; `t` stands for `-1/3`
/// and `m` for `-3a`.
pub fn build_gram_12_in_4_family2(a: f64) -> Result<GramMatrix> {
    if !(a > 0.0 && a < 1.0 / 3.0) {
        return Err(Error::ParameterOutOfRange(format!("need 0 < a < 1/3, got {a}")));
    }
    let a2 = a * a;
    let values = HashMap::from([
        ('a', a),
        ('t', -1.0 / 3.0),
        ('m', -3.0 * a),
        ('b', 1.0 - 12.0 * a2),
        ('c', 6.0 * a2 - 1.0),
        ('d', 18.0 * a2 - 1.0),
    ]);
    GramMatrix::from_pattern(&GRAM_12_IN_4_FAMILY2, &values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_spectrum(actual: &[f64], expected: &[f64], tol: f64) {
        let mut e = expected.to_vec();
        e.sort_by(f64::total_cmp);
        assert_eq!(actual.len(), e.len());
        for (x, y) in actual.iter().zip(&e) {
            assert!((x - y).abs() < tol, "{actual:?} vs {e:?}");
        }
    }

    fn with_zeros(mut v: Vec<f64>, total: usize) -> Vec<f64> {
        v.resize(total, 0.0);
        v
    }

    #[test]
    fn sixteen_in_five_spectrum() {
        let (a, b) = (-0.499890010934, 0.201039702365);
        let g = build_gram_16_in_5(a, b).unwrap();
        let s = 6.0 * a * a + 9.0 * b * b;
        let q = (15.0 - s) / 4.0;
        assert_spectrum(&g.eigenvalues(), &with_zeros(vec![1.0 + s, q, q, q, q], 16), 1e-10);
        let c = realize_from_gram(&g, 5).unwrap();
        assert_eq!(c.len(), 16);
    }

    #[test]
    fn sixteen_in_five_at_origin() {
        let g = build_gram_16_in_5(0.0, 0.0).unwrap();
        assert!((g.get(1, 8) - 2f64.sqrt() / 4.0).abs() < 1e-15);
        assert!((g.get(1, 7) + 2f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(g.get(1, 2), -0.5);
        assert_eq!(g.get(7, 8), -0.5);
        assert_eq!(g.get(7, 10), -0.5);
        assert_eq!(g.get(7, 11), 0.25);
        let rest: Vec<usize> = (1..16).collect();
        let sub = g.submatrix(&rest);
        let rank = sub.eigenvalues().iter().filter(|&&l| l > 1e-9).count();
        assert_eq!(rank, 4);
        assert!(realize_from_gram(&sub, 4).is_ok());
    }

    #[test]
    fn sixteen_in_five_rejects_out_of_range() {
        assert!(matches!(build_gram_16_in_5(1.0, 0.0), Err(Error::ParameterOutOfRange(_))));
        assert!(build_gram_16_in_5(0.2, -1.5).is_err());
    }

    #[test]
    fn family1_spectrum() {
        for a in [0.1, 0.25, 0.4] {
            let g = build_gram_12_in_4_family1(a).unwrap();
            let l = 12.0 * a;
            let m = 6.0 - 12.0 * a;
            assert_spectrum(&g.eigenvalues(), &with_zeros(vec![l, l, m, m], 12), 1e-12);
        }
        assert_spectrum(
            &build_gram_12_in_4_family1(0.25).unwrap().eigenvalues(),
            &with_zeros(vec![3.0; 4], 12),
            1e-12,
        );
        assert!(build_gram_12_in_4_family1(0.0).is_err());
        assert!(build_gram_12_in_4_family1(0.5).is_err());
    }

    #[test]
    fn family1_matches_triangle_construction() {
        let alpha: f64 = 0.6;
        let s = (1.0 - alpha * alpha).sqrt();
        let tri: Vec<[f64; 2]> = (0..3)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / 3.0;
                [t.cos(), t.sin()]
            })
            .collect();
        let mut rows = Vec::new();
        // order matching the table: +v4 triangle, -v4 triangle, then the v5 pair
        for sign in [1.0, -1.0] {
            for v in &tri {
                rows.push(vec![alpha * v[0], alpha * v[1], sign * s, 0.0]);
            }
        }
        for sign in [1.0, -1.0] {
            for v in &tri {
                rows.push(vec![-alpha * v[0], -alpha * v[1], 0.0, sign * s]);
            }
        }
        let config = PointConfig::new(4, &rows).unwrap();
        let g = build_gram_12_in_4_family1(alpha * alpha / 2.0).unwrap();
        let diff = (config.gram() - g.entries()).abs().max();
        assert!(diff < 1e-12, "{diff}");
    }

    #[test]
    fn family2_spectrum_and_limits() {
        let g = build_gram_12_in_4_family2(0.1).unwrap();
        let l = 4.0 / 3.0 + 0.24;
        assert_spectrum(&g.eigenvalues(), &with_zeros(vec![l, l, l, 8.0 - 0.72], 12), 1e-12);
        let c = realize_from_gram(&build_gram_12_in_4_family2(0.25).unwrap(), 4).unwrap();
        assert!((c.max_inner_product() - 0.25).abs() < 1e-12);
        let near = build_gram_12_in_4_family2(1.0 / 3.0 - 1e-6).unwrap().eigenvalues();
        assert!(near[8] < 1e-4);
        assert!(build_gram_12_in_4_family2(1.0 / 3.0).is_err());
    }

    #[test]
    fn simplex_gram_realizes() {
        let n = 4;
        let size = n + 1;
        let off = -1.0 / n as f64;
        let g = GramMatrix::new(DMatrix::from_fn(size, size, |i, j| if i == j { 1.0 } else { off })).unwrap();
        let c = realize_from_gram(&g, n).unwrap();
        assert!((c.gram() - g.entries()).abs().max() < 1e-12);
    }

    #[test]
    fn realization_errors() {
        let mut m = DMatrix::identity(3, 3);
        m[(0, 1)] = 1.5;
        m[(1, 0)] = 1.5;
        assert!(matches!(realize_from_gram(&GramMatrix::new(m).unwrap(), 3), Err(Error::NotPsd(_))));
        let id = GramMatrix::new(DMatrix::identity(4, 4)).unwrap();
        assert_eq!(realize_from_gram(&id, 3), Err(Error::RankTooHigh { rank: 4, dim: 3 }));
        let mut asym = DMatrix::identity(2, 2);
        asym[(0, 1)] = 0.3;
        assert!(GramMatrix::new(asym).is_err());
    }
}
