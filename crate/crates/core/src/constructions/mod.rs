//! Explicit configurations: named catalog entries, Gram matrix families,
//! code-theoretic and lattice constructions, and realization from Gram matrices.

mod catalog;
mod codes;
mod families;
mod gram;
mod lattice;
mod polytopes;

pub use catalog::{build_catalog, catalog_names, CatalogEntry};
pub use codes::{build_64_in_14_gram, build_nordstrom_robinson, cube_embed, shorten, BinaryCode};
pub use families::{
    build_40_in_10, build_40_in_10_competitor, build_96_in_9, build_c_n, build_diplo_simplex,
    c_n_alpha, perturb_diplo_simplex, DiploParams,
};
pub use gram::{
    build_gram_12_in_4_family1, build_gram_12_in_4_family2, build_gram_16_in_5, realize_from_gram,
    GramMatrix,
};
pub use lattice::{e6_roots, e7_roots, e8_roots, e6_union, e7_union, equiangular_56, schlafli};
pub use polytopes::{
    cell24, cell600, cross_polytope, hemicube, icosahedron, ngon, regular_simplex, simplex_config,
};

/// Bisection for a sign change of `f` on `[lo, hi]`, to absolute width `tol`.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    debug_assert!(flo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Rows scaled to unit length.
pub(crate) fn unit_rows(dim: usize, rows: Vec<Vec<f64>>) -> PointConfig {
    let mut coords = Vec::with_capacity(dim * rows.len());
    for r in rows {
        debug_assert_eq!(r.len(), dim);
        let n = crate::config::norm(&r);
        coords.extend(r.iter().map(|c| c / n));
    }
    PointConfig::from_flat_unchecked(dim, coords)
}

use crate::config::PointConfig;
