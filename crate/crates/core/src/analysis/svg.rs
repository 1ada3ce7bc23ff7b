//! Random 2-plane projections rendered as SVG.

use std::fmt::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::config::{dot, norm, PointConfig};

/// Pairs within this relative margin of the minimal distance are joined.
const EDGE_TOLERANCE: f64 = 1e-6;

/// An orthonormal pair in `R^n` drawn from a ChaCha stream keyed by `seed`.
pub fn random_plane(dim: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> Vec<f64> { (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect() };
    loop {
        let mut u = draw();
        let mut v = draw();
        let nu = norm(&u);
        if nu < 1e-8 {
            continue;
        }
        u.iter_mut().for_each(|x| *x /= nu);
        let c = dot(&u, &v);
        v.iter_mut().zip(&u).for_each(|(y, x)| *y -= c * x);
        let nv = norm(&v);
        if nv < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= nv);
        return (u, v);
    }
}

/// Projects onto a seeded random plane and draws the unit circle, the points,
/// and a segment for every pair at minimal distance.
pub fn project_svg(config: &PointConfig, plane_seed: u64) -> String {
    let (u, v) = random_plane(config.dim(), plane_seed);
    // y grows downward in SVG
    let proj: Vec<(f64, f64)> = config.points().map(|p| (dot(p, &u), -dot(p, &v))).collect();
    let min = config.min_squared_distance();
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.050000 -1.050000 2.100000 2.100000\">\n");
    s.push_str(
        "<circle cx=\"0.000000\" cy=\"0.000000\" r=\"1.000000\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004000\"/>\n",
    );
    for i in 0..config.len() {
        for j in i + 1..config.len() {
            if config.squared_distance(i, j) <= min * (1.0 + EDGE_TOLERANCE) {
                let (a, b) = (proj[i], proj[j]);
                writeln!(
                    s,
                    "<line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" stroke=\"gray\" stroke-width=\"0.004000\"/>",
                    a.0, a.1, b.0, b.1
                )
                .expect("writing to a String");
            }
        }
    }
    for (x, y) in &proj {
        writeln!(s, "<circle cx=\"{x:.6}\" cy=\"{y:.6}\" r=\"0.012000\" fill=\"black\"/>").expect("writing to a String");
    }
    s.push_str("</svg>\n");
    s.replace("\"-0.000000\"", "\"0.000000\"")
}

/// Number of `<line>` elements in a document produced by [`project_svg`].
pub fn segment_count(svg: &str) -> usize {
    svg.matches("<line ").count()
}
