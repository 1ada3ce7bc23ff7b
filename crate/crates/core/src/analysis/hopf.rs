//! The Hopf fibration `S^3 -> S^2`.

use crate::config::PointConfig;
use crate::error::{Error, Result};

/// Images closer than this are merged.
pub const HOPF_MERGE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct HopfImage {
    /// Distinct images on `S^2`, in order of first appearance.
    pub images: PointConfig,
    /// Indices of the points in each fiber.
    pub fibers: Vec<Vec<usize>>,
}

impl HopfImage {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.fibers.iter().map(Vec::len).collect()
    }
}

/// The image of `(z, w) = (a + ib, c + id)` on `S^2`: the point `z / w` of the
/// Riemann sphere, with `w = 0` at the north pole.
pub fn hopf_point(p: &[f64]) -> [f64; 3] {
    let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
    let s = a * a + b * b + c * c + d * d;
    // z * conj(w)
    let re = a * c + b * d;
    let im = b * c - a * d;
    [2.0 * re / s, 2.0 * im / s, (a * a + b * b - c * c - d * d) / s]
}

/// Maps each point of a configuration in `R^4` to `S^2` and groups the fibers.
pub fn hopf_map(config: &PointConfig) -> Result<HopfImage> {
    if config.dim() != 4 {
        return Err(Error::InvalidConfig(format!("the Hopf map needs points in R^4, got R^{}", config.dim())));
    }
    let mut images: Vec<[f64; 3]> = Vec::new();
    let mut fibers: Vec<Vec<usize>> = Vec::new();
    for (i, p) in config.points().enumerate() {
        let h = hopf_point(p);
        let found = images.iter().position(|q| {
            let d2: f64 = q.iter().zip(&h).map(|(x, y)| (x - y) * (x - y)).sum();
            d2.sqrt() <= HOPF_MERGE_TOLERANCE
        });
        match found {
            Some(k) => fibers[k].push(i),
            None => {
                images.push(h);
                fibers.push(vec![i]);
            }
        }
    }
    let rows: Vec<Vec<f64>> = images.iter().map(|h| h.to_vec()).collect();
    Ok(HopfImage { images: PointConfig::normalized(3, &rows)?, fibers })
}
