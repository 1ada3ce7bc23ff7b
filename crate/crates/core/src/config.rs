//! Point configurations on the unit sphere and tangent vectors to them.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Maximum allowed deviation of a point's norm from 1.
pub const UNIT_NORM_TOLERANCE: f64 = 1e-12;

/// `N` unit vectors in `R^n`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    dim: usize,
    coords: Vec<f64>,
}

impl PointConfig {
    /// Builds a configuration from rows that must already be unit vectors.
    pub fn new(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        let mut coords = Vec::with_capacity(dim * points.len());
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidConfig(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, coords)
    }

    /// Builds a configuration from a flat row-major coordinate buffer.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidConfig(format!("dimension {dim} < 2")));
        }
        if coords.is_empty() || coords.len() % dim != 0 {
            return Err(Error::InvalidConfig(format!(
                "{} coordinates do not form a nonempty set of {dim}-vectors",
                coords.len()
            )));
        }
        let config = PointConfig { dim, coords };
        for (i, p) in config.points().enumerate() {
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidConfig(format!("point {i} has a non-finite coordinate")));
            }
            let norm = norm(p);
            if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
                return Err(Error::NotOnSphere { index: i, norm });
            }
        }
        Ok(config)
    }

    /// Normalizes every row onto the sphere. Rows must be nonzero.
    pub fn normalized(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            let r = norm(p);
            if r == 0.0 || !r.is_finite() {
                return Err(Error::InvalidConfig(format!("point {i} cannot be normalized")));
            }
            rows.push(p.iter().map(|c| c / r).collect::<Vec<_>>());
        }
        Self::new(dim, &rows)
    }

    pub(crate) fn from_flat_unchecked(dim: usize, coords: Vec<f64>) -> Self {
        debug_assert_eq!(coords.len() % dim, 0);
        PointConfig { dim, coords }
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points `N`.
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn inner(&self, i: usize, j: usize) -> f64 {
        dot(self.point(i), self.point(j))
    }

    pub fn squared_distance(&self, i: usize, j: usize) -> f64 {
        squared_distance(self.point(i), self.point(j))
    }

    /// Gram matrix of inner products.
    pub fn gram(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut g = DMatrix::zeros(n, n);
        for i in 0..n {
            g[(i, i)] = dot(self.point(i), self.point(i));
            for j in i + 1..n {
                let v = self.inner(i, j);
                g[(i, j)] = v;
                g[(j, i)] = v;
            }
        }
        g
    }

    /// Largest inner product between distinct points, or `-1` for a single point.
    pub fn max_inner_product(&self) -> f64 {
        let mut best = -1.0f64;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                best = best.max(self.inner(i, j));
            }
        }
        best
    }

    /// Smallest squared distance between distinct points.
    pub fn min_squared_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                best = best.min(self.squared_distance(i, j));
            }
        }
        best
    }

    /// Applies `x -> Q x` to every point.
    pub fn transformed(&self, q: &DMatrix<f64>) -> Result<PointConfig> {
        if q.nrows() != self.dim || q.ncols() != self.dim {
            return Err(Error::InvalidConfig("transform has the wrong shape".into()));
        }
        let mut coords = Vec::with_capacity(self.coords.len());
        for p in self.points() {
            let v = q * DVector::from_column_slice(p);
            coords.extend(v.iter());
        }
        Ok(PointConfig::from_flat_unchecked(self.dim, coords))
    }

    /// Embeds into a higher dimension by zero padding.
    pub fn padded(&self, dim: usize) -> Result<PointConfig> {
        if dim < self.dim {
            return Err(Error::InvalidConfig(format!("cannot pad {} into {dim}", self.dim)));
        }
        let mut coords = Vec::with_capacity(dim * self.len());
        for p in self.points() {
            coords.extend_from_slice(p);
            coords.extend(std::iter::repeat_n(0.0, dim - self.dim));
        }
        Ok(PointConfig::from_flat_unchecked(dim, coords))
    }

    /// Keeps the points at the given indices, in order.
    pub fn subset(&self, indices: &[usize]) -> Result<PointConfig> {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            if i >= self.len() {
                return Err(Error::InvalidConfig(format!("index {i} out of range")));
            }
            coords.extend_from_slice(self.point(i));
        }
        PointConfig::from_flat(self.dim, coords)
    }

    /// Reorders points so that point `i` of the result is `self.point(perm[i])`.
    pub fn permuted(&self, perm: &[usize]) -> Result<PointConfig> {
        if perm.len() != self.len() {
            return Err(Error::InvalidConfig("permutation has the wrong length".into()));
        }
        self.subset(perm)
    }

    /// Concatenates two configurations of the same dimension.
    pub fn union(&self, other: &PointConfig) -> Result<PointConfig> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch(self.dim, self.len(), other.dim, other.len()));
        }
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Ok(PointConfig::from_flat_unchecked(self.dim, coords))
    }

    /// Numerical rank of the span of the points.
    pub fn span_rank(&self, tol: f64) -> usize {
        let m = DMatrix::from_row_slice(self.len(), self.dim, &self.coords);
        let sv = m.singular_values();
        let top = sv.iter().cloned().fold(0.0, f64::max);
        sv.iter().filter(|&&s| s > tol * top.max(1.0)).count()
    }
}

/// Per-point displacement vectors tangent to the sphere at each point.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    dim: usize,
    components: Vec<f64>,
}

impl TangentVector {
    pub(crate) fn from_flat(dim: usize, components: Vec<f64>) -> Self {
        TangentVector { dim, components }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.components.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, i: usize) -> &[f64] {
        &self.components[i * self.dim..(i + 1) * self.dim]
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    /// Largest per-point Euclidean norm.
    pub fn sup_norm(&self) -> f64 {
        self.components.chunks_exact(self.dim).map(norm).fold(0.0, f64::max)
    }

    /// Euclidean norm of the whole vector.
    pub fn norm(&self) -> f64 {
        norm(&self.components)
    }

    /// Largest `|<v_i, x_i>|` over points of `config`.
    pub fn max_normal_component(&self, config: &PointConfig) -> f64 {
        (0..self.len())
            .map(|i| dot(self.component(i), config.point(i)).abs())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Sup-norm of per-point blocks in a flat buffer.
pub(crate) fn block_sup_norm(v: &[f64], dim: usize) -> f64 {
    v.chunks_exact(dim).map(norm).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_off_sphere_points() {
        let err = PointConfig::new(2, &[vec![1.0, 0.0], vec![0.0, 1.01]]).unwrap_err();
        assert_eq!(err, Error::NotOnSphere { index: 1, norm: 1.01 });
    }

    #[test]
    fn rejects_wrong_arity_and_tiny_dimension() {
        assert!(PointConfig::new(3, &[vec![1.0, 0.0]]).is_err());
        assert!(PointConfig::new(1, &[vec![1.0]]).is_err());
        assert!(PointConfig::from_flat(2, vec![]).is_err());
        assert!(PointConfig::new(2, &[vec![f64::NAN, 1.0]]).is_err());
    }

    #[test]
    fn normalized_rows_are_unit() {
        let c = PointConfig::normalized(3, &[vec![3.0, 4.0, 0.0], vec![0.0, 0.0, -2.0]]).unwrap();
        assert!((c.inner(0, 0) - 1.0).abs() < 1e-15);
        assert_eq!(c.point(1), &[0.0, 0.0, -1.0]);
        assert!((c.max_inner_product() - 0.0).abs() < 1e-15);
    }
}
