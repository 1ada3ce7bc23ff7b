//! Energy, Riemannian gradient and Riemannian Hessian on products of spheres.
//!
//! The energy of a configuration is the sum of `f(|x_i - x_j|^2)` over unordered
//! pairs `i < j`, accumulated in lexicographic pair order so that identical inputs
//! give identical bits. Tangent spaces are parametrized by per-point orthonormal
//! frames taken from the Householder reflection that sends `x_i` to a coordinate
//! axis.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::config::{block_sup_norm, dot, PointConfig, TangentVector};
use crate::error::{Error, Result};
use crate::potential::{Kernel, PotentialSpec};

/// Squared distances at or below this value are treated as coincident.
pub const COINCIDENCE_THRESHOLD: f64 = 1e-14;
/// Gradient sup-norm below which a configuration counts as critical.
pub const CRITICAL_THRESHOLD: f64 = 1e-8;
/// Eigenvalues with absolute value below this count as zero.
pub const ZERO_EIGENVALUE_THRESHOLD: f64 = 1e-8;

/// Sorted spectrum of the Riemannian Hessian.
#[derive(Debug, Clone, PartialEq)]
pub struct HessianSpectrum {
    pub eigenvalues: Vec<f64>,
    pub zero_count: usize,
    /// Set when the input was not a critical point; the spectrum is still reported.
    pub non_critical: bool,
    pub gradient_norm: f64,
}

impl HessianSpectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn negative_count(&self) -> usize {
        self.eigenvalues.iter().filter(|&&l| l <= -ZERO_EIGENVALUE_THRESHOLD).count()
    }
}

/// `E_f(C) = (1/2) sum_{x != y} f(|x - y|^2)`.
pub fn energy(config: &PointConfig, potential: &PotentialSpec) -> Result<f64> {
    let kernel = potential.kernel(config.dim())?;
    energy_flat(config.dim(), config.coords(), &kernel)
}

/// Tangential projection of the ambient gradient of the energy.
pub fn riemannian_gradient(config: &PointConfig, potential: &PotentialSpec) -> Result<TangentVector> {
    let kernel = potential.kernel(config.dim())?;
    let mut g = vec![0.0; config.coords().len()];
    ambient_gradient_flat(config.dim(), config.coords(), &kernel, &mut g)?;
    project_tangent(config.dim(), config.coords(), &mut g);
    Ok(TangentVector::from_flat(config.dim(), g))
}

/// Eigenvalues of the Riemannian Hessian in per-point orthonormal tangent frames.
pub fn riemannian_hessian_spectrum(
    config: &PointConfig,
    potential: &PotentialSpec,
) -> Result<HessianSpectrum> {
    let kernel = potential.kernel(config.dim())?;
    let frames = TangentFrames::new(config);
    let (h, gradient_norm) = hessian_in_frames(config, &kernel, &frames, false)?;
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let zero_count = eigenvalues.iter().filter(|l| l.abs() < ZERO_EIGENVALUE_THRESHOLD).count();
    Ok(HessianSpectrum {
        eigenvalues,
        zero_count,
        non_critical: gradient_norm >= CRITICAL_THRESHOLD,
        gradient_norm,
    })
}

/// The assembled tangent-space Hessian, with every block computed independently
/// (no mirroring), so that its symmetry can be checked.
pub fn riemannian_hessian_matrix(config: &PointConfig, potential: &PotentialSpec) -> Result<DMatrix<f64>> {
    let kernel = potential.kernel(config.dim())?;
    let frames = TangentFrames::new(config);
    Ok(hessian_in_frames(config, &kernel, &frames, false)?.0)
}

pub(crate) fn energy_flat(dim: usize, coords: &[f64], kernel: &Kernel) -> Result<f64> {
    let n = coords.len() / dim;
    let singular = kernel.is_singular();
    // Neumaier-compensated, so that large symmetric sums are accurate to a few ulps
    let (mut total, mut carry) = (0.0f64, 0.0f64);
    for i in 0..n {
        let xi = &coords[i * dim..(i + 1) * dim];
        for j in i + 1..n {
            let xj = &coords[j * dim..(j + 1) * dim];
            let r = sq_dist(xi, xj);
            if singular && r <= COINCIDENCE_THRESHOLD {
                return Err(Error::CoincidentPoints(i, j, r));
            }
            let v = kernel.value(r);
            let t = total + v;
            carry += if total.abs() >= v.abs() { (total - t) + v } else { (v - t) + total };
            total = t;
        }
    }
    Ok(total + carry)
}

/// `E(new) - E(old)` for the configurations obtained by normalizing every row,
/// accumulated pairwise from exact-difference formulas.
///
/// Rows are normalized here so that last-bit radial rounding in `new` does not
/// swamp the tiny energy changes of late descent steps.
pub(crate) fn energy_delta_flat(dim: usize, old: &[f64], new: &[f64], kernel: &Kernel) -> Result<f64> {
    let n = old.len() / dim;
    let singular = kernel.is_singular();
    // xh = x / |x|, u = y / |y| - x / |x| computed without cancellation
    let mut xh = vec![0.0; old.len()];
    let mut u = vec![0.0; old.len()];
    for i in 0..n {
        let x = &old[i * dim..(i + 1) * dim];
        let y = &new[i * dim..(i + 1) * dim];
        let (nx, ny) = (dot(x, x).sqrt(), dot(y, y).sqrt());
        let mut diff_dot_sum = 0.0;
        for k in 0..dim {
            diff_dot_sum += (y[k] - x[k]) * (y[k] + x[k]);
        }
        // 1/|y| - 1/|x| = (|x| - |y|) / (|x||y|) = -(|y|^2 - |x|^2) / (|x||y|(|x| + |y|))
        let s = -diff_dot_sum / (nx * ny * (nx + ny));
        for k in 0..dim {
            xh[i * dim + k] = x[k] / nx;
            u[i * dim + k] = (y[k] - x[k]) / ny + x[k] * s;
        }
    }
    let mut total = 0.0;
    for i in 0..n {
        let xi = &xh[i * dim..(i + 1) * dim];
        let ui = &u[i * dim..(i + 1) * dim];
        for j in i + 1..n {
            let xj = &xh[j * dim..(j + 1) * dim];
            let uj = &u[j * dim..(j + 1) * dim];
            // d = xi - xj, e = ui - uj, r' - r = 2<d, e> + |e|^2
            let mut r = 0.0;
            let mut cross = 0.0;
            let mut esq = 0.0;
            for k in 0..dim {
                let d = xi[k] - xj[k];
                let e = ui[k] - uj[k];
                r += d * d;
                cross += d * e;
                esq += e * e;
            }
            let dr = 2.0 * cross + esq;
            if singular && (r + dr) <= COINCIDENCE_THRESHOLD {
                return Err(Error::CoincidentPoints(i, j, r + dr));
            }
            total += kernel.delta(r, dr);
        }
    }
    Ok(total)
}

/// Ambient gradient `g_i = sum_j 2 f'(r_ij) (x_i - x_j)` written into `out`.
pub(crate) fn ambient_gradient_flat(dim: usize, coords: &[f64], kernel: &Kernel, out: &mut [f64]) -> Result<()> {
    let n = coords.len() / dim;
    let singular = kernel.is_singular();
    out.iter_mut().for_each(|v| *v = 0.0);
    let mut d = vec![0.0; dim];
    for i in 0..n {
        for j in i + 1..n {
            let mut r = 0.0;
            for k in 0..dim {
                d[k] = coords[i * dim + k] - coords[j * dim + k];
                r += d[k] * d[k];
            }
            if singular && r <= COINCIDENCE_THRESHOLD {
                return Err(Error::CoincidentPoints(i, j, r));
            }
            let w = 2.0 * kernel.d1(r);
            for k in 0..dim {
                out[i * dim + k] += w * d[k];
                out[j * dim + k] -= w * d[k];
            }
        }
    }
    Ok(())
}

/// Replaces each block `g_i` by `g_i - <g_i, x_i> x_i`.
pub(crate) fn project_tangent(dim: usize, coords: &[f64], g: &mut [f64]) {
    for (gi, xi) in g.chunks_exact_mut(dim).zip(coords.chunks_exact(dim)) {
        let lambda = dot(gi, xi);
        for (a, b) in gi.iter_mut().zip(xi) {
            *a -= lambda * b;
        }
    }
}

/// Riemannian gradient sup-norm of a flat configuration.
pub(crate) fn gradient_sup_norm(dim: usize, coords: &[f64], kernel: &Kernel) -> Result<f64> {
    let mut g = vec![0.0; coords.len()];
    ambient_gradient_flat(dim, coords, kernel, &mut g)?;
    project_tangent(dim, coords, &mut g);
    Ok(block_sup_norm(&g, dim))
}

#[inline]
fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for k in 0..a.len() {
        let d = a[k] - b[k];
        s += d * d;
    }
    s
}

/// Orthonormal bases of the tangent spaces, one `n x (n-1)` block per point.
#[derive(Debug, Clone)]
pub(crate) struct TangentFrames {
    dim: usize,
    /// Row-major `n x (n-1)` blocks.
    bases: Vec<f64>,
}

impl TangentFrames {
    pub(crate) fn new(config: &PointConfig) -> Self {
        let n = config.dim();
        let m = n - 1;
        let mut bases = Vec::with_capacity(config.len() * n * m);
        for x in config.points() {
            // Householder H = I - 2 v v^T / v^T v with v = x + sign(x_0) e_0 maps x to -sign(x_0) e_0;
            // its columns 1..n span the orthogonal complement of x.
            let sign = if x[0] >= 0.0 { 1.0 } else { -1.0 };
            let mut v = x.to_vec();
            v[0] += sign;
            let vv = dot(&v, &v);
            for r in 0..n {
                for c in 1..n {
                    let id = if r == c { 1.0 } else { 0.0 };
                    bases.push(id - 2.0 * v[r] * v[c] / vv);
                }
            }
        }
        TangentFrames { dim: n, bases }
    }

    fn block(&self, i: usize) -> &[f64] {
        let sz = self.dim * (self.dim - 1);
        &self.bases[i * sz..(i + 1) * sz]
    }

    /// Frame coordinates `B_i^T v` of an ambient vector at point `i`.
    pub(crate) fn to_frame(&self, i: usize, v: &[f64], out: &mut [f64]) {
        let (n, m) = (self.dim, self.dim - 1);
        let b = self.block(i);
        for c in 0..m {
            out[c] = (0..n).map(|r| b[r * m + c] * v[r]).sum();
        }
    }

    /// Ambient vector `B_i w` from frame coordinates at point `i`.
    pub(crate) fn from_frame(&self, i: usize, w: &[f64], out: &mut [f64]) {
        let (n, m) = (self.dim, self.dim - 1);
        let b = self.block(i);
        for r in 0..n {
            out[r] = (0..m).map(|c| b[r * m + c] * w[c]).sum();
        }
    }

    /// `B_i^T B_j`, `(n-1) x (n-1)` row-major.
    fn cross(&self, i: usize, j: usize, out: &mut [f64]) {
        let (n, m) = (self.dim, self.dim - 1);
        let (bi, bj) = (self.block(i), self.block(j));
        for a in 0..m {
            for c in 0..m {
                out[a * m + c] = (0..n).map(|r| bi[r * m + a] * bj[r * m + c]).sum();
            }
        }
    }
}

/// Hessian in frame coordinates and the gradient sup-norm.
///
/// With `mirror` set, the `(j, i)` block is copied from the `(i, j)` block.
pub(crate) fn hessian_in_frames(
    config: &PointConfig,
    kernel: &Kernel,
    frames: &TangentFrames,
    mirror: bool,
) -> Result<(DMatrix<f64>, f64)> {
    let (n, count) = (config.dim(), config.len());
    let m = n - 1;
    let coords = config.coords();
    let mut grad = vec![0.0; coords.len()];
    ambient_gradient_flat(n, coords, kernel, &mut grad)?;
    let lambdas: Vec<f64> = (0..count)
        .map(|i| dot(&grad[i * n..(i + 1) * n], config.point(i)))
        .collect();
    project_tangent(n, coords, &mut grad);
    let gradient_norm = block_sup_norm(&grad, n);

    let mut h = DMatrix::<f64>::zeros(m * count, m * count);
    let mut d = vec![0.0; n];
    let mut ai = vec![0.0; m];
    let mut aj = vec![0.0; m];
    let mut cross = vec![0.0; m * m];
    let mut diag = vec![0.0; m * m];
    for i in 0..count {
        diag.iter_mut().for_each(|v| *v = 0.0);
        for j in 0..count {
            if i == j {
                continue;
            }
            let mut r = 0.0;
            for k in 0..n {
                d[k] = config.point(i)[k] - config.point(j)[k];
                r += d[k] * d[k];
            }
            if kernel.is_singular() && r <= COINCIDENCE_THRESHOLD {
                return Err(Error::CoincidentPoints(i.min(j), i.max(j), r));
            }
            let (f1, f2) = (kernel.d1(r), kernel.d2(r));
            frames.to_frame(i, &d, &mut ai);
            // diagonal block: sum_j 4 f'' a a^T + 2 f' I
            for a in 0..m {
                for c in 0..m {
                    diag[a * m + c] += 4.0 * f2 * ai[a] * ai[c];
                }
                diag[a * m + a] += 2.0 * f1;
            }
            // mirrored runs already wrote this block from the (j, i) side
            if mirror && j < i {
                continue;
            }
            frames.to_frame(j, &d, &mut aj);
            frames.cross(i, j, &mut cross);
            for a in 0..m {
                for c in 0..m {
                    let v = -(4.0 * f2 * ai[a] * aj[c] + 2.0 * f1 * cross[a * m + c]);
                    h[(i * m + a, j * m + c)] = v;
                    if mirror {
                        h[(j * m + c, i * m + a)] = v;
                    }
                }
            }
        }
        for a in 0..m {
            for c in 0..m {
                h[(i * m + a, i * m + c)] = diag[a * m + c];
            }
            h[(i * m + a, i * m + a)] -= lambdas[i];
        }
    }
    Ok((h, gradient_norm))
}
