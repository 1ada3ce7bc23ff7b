//! Critical-point search: random starts, Riemannian gradient descent with Armijo
//! backtracking, and Newton polishing of gradient zeros.

use nalgebra::{DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::config::{block_sup_norm, norm, PointConfig};
use crate::energy::{
    ambient_gradient_flat, energy_delta_flat, energy_flat, gradient_sup_norm, hessian_in_frames,
    project_tangent, TangentFrames,
};
use crate::error::{Error, Result};
use crate::potential::{Kernel, PotentialSpec};

/// Steps below this length end a backtracking search.
pub const MIN_STEP: f64 = 1e-18;
/// Gradient sup-norm that newton polishing aims for, relative to
/// `max(1, largest ambient force)`.
pub const POLISH_TOLERANCE: f64 = 1e-13;
/// Newton iterations before giving up.
pub const POLISH_MAX_ITERATIONS: usize = 100;
/// Relative eigenvalue cutoff of the Newton pseudoinverse.
pub const PSEUDOINVERSE_CUTOFF: f64 = 1e-10;
/// Largest gradient sup-norm accepted as a starting point for polishing,
/// relative to `max(1, largest ambient force)`.
pub const POLISH_ENTRY_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct DescentSettings {
    pub max_iterations: usize,
    pub gradient_tolerance: f64,
    /// First trial step; `None` means `1/N`.
    pub initial_step: Option<f64>,
    pub armijo_c: f64,
    pub backtrack_factor: f64,
    pub polish: bool,
}

impl Default for DescentSettings {
    fn default() -> Self {
        DescentSettings {
            max_iterations: 100_000,
            gradient_tolerance: 1e-12,
            initial_step: None,
            armijo_c: 1e-4,
            backtrack_factor: 0.5,
            polish: false,
        }
    }
}

impl DescentSettings {
    /// Settings used by random-restart searches: descend until the gradient is
    /// small enough for Newton's method, then polish.
    pub fn search() -> Self {
        DescentSettings { gradient_tolerance: 1e-7, max_iterations: 200_000, polish: true, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::ParameterOutOfRange(m.to_string()));
        if self.max_iterations == 0 {
            return bad("max_iterations must be positive");
        }
        if !(self.gradient_tolerance > 0.0) {
            return bad("gradient_tolerance must be positive");
        }
        if let Some(s) = self.initial_step {
            if !(s > 0.0 && s.is_finite()) {
                return bad("initial_step must be positive");
            }
        }
        if !(self.armijo_c > 0.0 && self.armijo_c < 1.0) {
            return bad("armijo_c must lie in (0, 1)");
        }
        if !(self.backtrack_factor > 0.0 && self.backtrack_factor < 1.0) {
            return bad("backtrack_factor must lie in (0, 1)");
        }
        Ok(())
    }
}

/// How a descent ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentStatus {
    Converged,
    MaxIterations,
    /// Backtracking fell below [`MIN_STEP`] without meeting the Armijo condition.
    Stalled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentResult {
    pub config: PointConfig,
    pub energy: f64,
    pub iterations: usize,
    pub converged: bool,
    pub gradient_norm: f64,
    pub seed: u64,
    pub status: DescentStatus,
}

/// One accepted descent step, reported to observers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub iteration: usize,
    /// Running energy, updated by exact pairwise differences.
    pub energy: f64,
    pub gradient_norm: f64,
    pub step: f64,
}

/// `N` independent uniform points on `S^{n-1}` from a ChaCha stream keyed by `seed`.
pub fn random_config(dim: usize, count: usize, seed: u64) -> Result<PointConfig> {
    if dim < 2 || count < 1 {
        return Err(Error::InvalidConfig(format!("need n >= 2 and N >= 1, got ({dim}, {count})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords = Vec::with_capacity(dim * count);
    let mut v = vec![0.0; dim];
    while coords.len() < dim * count {
        for c in v.iter_mut() {
            *c = StandardNormal.sample(&mut rng);
        }
        let r = norm(&v);
        // a zero draw has probability zero, but skip it rather than divide by it
        if r > 1e-300 {
            coords.extend(v.iter().map(|c| c / r));
        }
    }
    Ok(PointConfig::from_flat_unchecked(dim, coords))
}

pub fn gradient_descent(
    start: &PointConfig,
    potential: &PotentialSpec,
    settings: &DescentSettings,
) -> Result<DescentResult> {
    gradient_descent_observed(start, potential, settings, |_| {})
}

/// Gradient descent reporting every accepted step to `observer`.
pub fn gradient_descent_observed(
    start: &PointConfig,
    potential: &PotentialSpec,
    settings: &DescentSettings,
    mut observer: impl FnMut(&StepRecord),
) -> Result<DescentResult> {
    settings.validate()?;
    let dim = start.dim();
    let kernel = potential.kernel(dim)?;
    let mut x = start.coords().to_vec();
    let mut trial = vec![0.0; x.len()];
    let mut grad = vec![0.0; x.len()];

    let mut energy = energy_flat(dim, &x, &kernel)?;
    ambient_gradient_flat(dim, &x, &kernel, &mut grad)?;
    project_tangent(dim, &x, &mut grad);
    let mut gnorm = block_sup_norm(&grad, dim);
    let mut step = settings.initial_step.unwrap_or(1.0 / start.len() as f64);
    let mut iterations = 0;

    let status = loop {
        if gnorm <= settings.gradient_tolerance {
            break DescentStatus::Converged;
        }
        if iterations >= settings.max_iterations {
            break DescentStatus::MaxIterations;
        }
        let gsq: f64 = grad.iter().map(|g| g * g).sum();
        let accepted = loop {
            retract(dim, &x, &grad, step, &mut trial);
            match energy_delta_flat(dim, &x, &trial, &kernel) {
                Ok(de) if de <= -settings.armijo_c * step * gsq => break Some(de),
                Ok(_) | Err(Error::CoincidentPoints(..)) => {}
                Err(e) => return Err(e),
            }
            step *= settings.backtrack_factor;
            if step < MIN_STEP {
                break None;
            }
        };
        let Some(de) = accepted else {
            break DescentStatus::Stalled;
        };
        std::mem::swap(&mut x, &mut trial);
        energy += de;
        iterations += 1;
        ambient_gradient_flat(dim, &x, &kernel, &mut grad)?;
        project_tangent(dim, &x, &mut grad);
        gnorm = block_sup_norm(&grad, dim);
        observer(&StepRecord { iteration: iterations, energy, gradient_norm: gnorm, step });
        step /= settings.backtrack_factor;
    };

    let config = PointConfig::from_flat_unchecked(dim, x);
    let result = DescentResult {
        energy: energy_flat(dim, config.coords(), &kernel)?,
        config,
        iterations,
        converged: status == DescentStatus::Converged,
        gradient_norm: gnorm,
        seed: 0,
        status,
    };
    if settings.polish && result.converged {
        match newton_polish(&result.config, potential) {
            Ok(mut polished) => {
                polished.iterations += result.iterations;
                return Ok(polished);
            }
            Err(Error::DidNotConverge { .. }) | Err(Error::NotNearCritical(_)) => {
                return Ok(DescentResult { converged: false, ..result });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(result)
}

/// `trial_i = normalize(x_i - step * g_i)`.
fn retract(dim: usize, x: &[f64], g: &[f64], step: f64, trial: &mut [f64]) {
    for ((t, xi), gi) in trial.chunks_exact_mut(dim).zip(x.chunks_exact(dim)).zip(g.chunks_exact(dim)) {
        for k in 0..dim {
            t[k] = xi[k] - step * gi[k];
        }
        let r = norm(t);
        t.iter_mut().for_each(|c| *c /= r);
    }
}

/// Newton iteration on the Riemannian gradient, using a pseudoinverse of the
/// tangent-space Hessian so that symmetry null directions are ignored.
pub fn newton_polish(approx: &PointConfig, potential: &PotentialSpec) -> Result<DescentResult> {
    let dim = approx.dim();
    let kernel = potential.kernel(dim)?;
    let start_norm = gradient_sup_norm(dim, approx.coords(), &kernel)?;
    let mut ambient = vec![0.0; approx.coords().len()];
    ambient_gradient_flat(dim, approx.coords(), &kernel, &mut ambient)?;
    let scale = block_sup_norm(&ambient, dim).max(1.0);
    if !(start_norm < POLISH_ENTRY_THRESHOLD * scale) {
        return Err(Error::NotNearCritical(start_norm));
    }
    let target = POLISH_TOLERANCE * scale;
    let mut config = approx.clone();
    let mut gnorm = start_norm;
    let mut iterations = 0;
    while gnorm > target {
        if iterations >= POLISH_MAX_ITERATIONS {
            return Err(Error::DidNotConverge { iterations, gradient_norm: gnorm });
        }
        let next = newton_step(&config, &kernel)?;
        let next_norm = gradient_sup_norm(dim, next.coords(), &kernel)?;
        iterations += 1;
        if !(next_norm < gnorm) && next_norm > target {
            // floating-point floor reached above the target
            return Err(Error::DidNotConverge { iterations, gradient_norm: gnorm });
        }
        config = next;
        gnorm = next_norm;
    }
    Ok(DescentResult {
        energy: energy_flat(dim, config.coords(), &kernel)?,
        config,
        iterations,
        converged: true,
        gradient_norm: gnorm,
        seed: 0,
        status: DescentStatus::Converged,
    })
}

fn newton_step(config: &PointConfig, kernel: &Kernel) -> Result<PointConfig> {
    let (dim, count) = (config.dim(), config.len());
    let m = dim - 1;
    let frames = TangentFrames::new(config);
    let (h, _) = hessian_in_frames(config, kernel, &frames, true)?;

    let mut grad = vec![0.0; config.coords().len()];
    ambient_gradient_flat(dim, config.coords(), kernel, &mut grad)?;
    project_tangent(dim, config.coords(), &mut grad);
    let mut b = DVector::zeros(m * count);
    let mut w = vec![0.0; m];
    for i in 0..count {
        frames.to_frame(i, &grad[i * dim..(i + 1) * dim], &mut w);
        for a in 0..m {
            b[i * m + a] = w[a];
        }
    }

    let eig = SymmetricEigen::new(h);
    let scale = eig.eigenvalues.iter().fold(0.0f64, |acc, l| acc.max(l.abs()));
    let cutoff = PSEUDOINVERSE_CUTOFF * scale.max(1.0);
    let mut delta = DVector::zeros(m * count);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() > cutoff {
            let v = eig.eigenvectors.column(k);
            delta -= v * (v.dot(&b) / lambda);
        }
    }

    let mut coords = config.coords().to_vec();
    let mut amb = vec![0.0; dim];
    for i in 0..count {
        frames.from_frame(i, &delta.as_slice()[i * m..(i + 1) * m], &mut amb);
        let p = &mut coords[i * dim..(i + 1) * dim];
        for k in 0..dim {
            p[k] += amb[k];
        }
        let r = norm(p);
        p.iter_mut().for_each(|c| *c /= r);
    }
    Ok(PointConfig::from_flat_unchecked(dim, coords))
}
