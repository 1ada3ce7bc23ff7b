//! Named configurations.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::codes::{build_64_in_14_gram, build_nordstrom_robinson, cube_embed, shorten};
use super::families::{build_40_in_10, build_40_in_10_competitor, build_96_in_9, build_c_n, build_diplo_simplex};
use super::gram::{
    build_gram_12_in_4_family1, build_gram_12_in_4_family2, build_gram_16_in_5, realize_from_gram, GramMatrix,
};
use super::lattice::{e6_union, e7_union, e8_config, equiangular_56, schlafli};
use super::polytopes::{
    cell24, cell24_dual, cell600, cross_polytope, dual_dodecahedron, hemicube, icosahedron, ngon, regular_simplex,
    simplex_config,
};
use super::{bisect, unit_rows};
use crate::config::PointConfig;
use crate::error::{Error, Result};

/// A catalog name together with its parameters and the resulting shape.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub n: usize,
    pub count: usize,
    pub params: Vec<(String, f64)>,
}

struct Spec {
    name: &'static str,
    shape: Shape,
    defaults: &'static [(&'static str, f64)],
}

enum Shape {
    Fixed(usize, usize),
    /// Computed from the parameters.
    Param(fn(&dyn Fn(&str) -> f64) -> Result<(usize, usize)>),
}

fn int(v: f64, what: &str) -> Result<usize> {
    if v.fract() != 0.0 || !(0.0..=1e6).contains(&v) {
        return Err(Error::ParameterOutOfRange(format!("{what} must be a nonnegative integer, got {v}")));
    }
    Ok(v as usize)
}

const SPECS: &[Spec] = &[
    Spec { name: "ngon", shape: Shape::Param(|p| Ok((2, int(p("N"), "N")?))), defaults: &[("N", 5.0)] },
    Spec {
        name: "simplex",
        shape: Shape::Param(|p| {
            let n = int(p("n"), "n")?;
            let count = if p("N") == 0.0 { n + 1 } else { int(p("N"), "N")? };
            Ok((n, count))
        }),
        defaults: &[("n", 3.0), ("N", 0.0)],
    },
    Spec {
        name: "cross_polytope",
        shape: Shape::Param(|p| {
            let n = int(p("n"), "n")?;
            Ok((n, 2 * n))
        }),
        defaults: &[("n", 3.0)],
    },
    Spec {
        name: "diplo_simplex",
        shape: Shape::Param(|p| {
            let n = int(p("n"), "n")?;
            Ok((n, 2 * n + 2))
        }),
        defaults: &[("n", 6.0)],
    },
    Spec {
        name: "c_n",
        shape: Shape::Param(|p| {
            let n = int(p("n"), "n")?;
            Ok((n, 2 * n + 1))
        }),
        defaults: &[("n", 4.0)],
    },
    Spec {
        name: "hemicube",
        shape: Shape::Param(|p| {
            let n = int(p("n"), "n")?;
            Ok((n, 1 << n.clamp(1, 20).saturating_sub(1)))
        }),
        defaults: &[("n", 5.0)],
    },
    Spec { name: "icosahedron_12_3", shape: Shape::Fixed(3, 12), defaults: &[] },
    Spec { name: "icosa_dodeca_32_3", shape: Shape::Fixed(3, 32), defaults: &[] },
    Spec { name: "petersen_10_4", shape: Shape::Fixed(4, 10), defaults: &[] },
    Spec { name: "pentagon_pair_10_4", shape: Shape::Fixed(4, 10), defaults: &[] },
    Spec { name: "log_torus_11_4", shape: Shape::Fixed(4, 11), defaults: &[] },
    Spec { name: "gram12_family1_12_4", shape: Shape::Fixed(4, 12), defaults: &[("a", 0.25)] },
    Spec { name: "gram12_family2_12_4", shape: Shape::Fixed(4, 12), defaults: &[("a", 0.25)] },
    Spec { name: "torus_13_4", shape: Shape::Fixed(4, 13), defaults: &[] },
    Spec { name: "fifteen_15_4", shape: Shape::Fixed(4, 15), defaults: &[] },
    Spec { name: "cell24_24_4", shape: Shape::Fixed(4, 24), defaults: &[] },
    Spec { name: "hopf48_48_4", shape: Shape::Fixed(4, 48), defaults: &[] },
    Spec { name: "cell600_120_4", shape: Shape::Fixed(4, 120), defaults: &[] },
    Spec { name: "hemicube_16_5", shape: Shape::Fixed(5, 16), defaults: &[] },
    Spec {
        name: "gram16_16_5",
        shape: Shape::Fixed(5, 16),
        defaults: &[("a", -0.499890010934), ("b", 0.201039702365)],
    },
    Spec { name: "simplex_mid_face_21_5", shape: Shape::Fixed(5, 21), defaults: &[] },
    Spec { name: "signs_32_5", shape: Shape::Fixed(5, 32), defaults: &[] },
    Spec { name: "layered_74_5", shape: Shape::Fixed(5, 74), defaults: &[] },
    Spec { name: "schlafli_27_6", shape: Shape::Fixed(6, 27), defaults: &[] },
    Spec { name: "edge_mid_antipodes_42_6", shape: Shape::Fixed(6, 42), defaults: &[] },
    Spec { name: "cross_hemicube_44_6", shape: Shape::Fixed(6, 44), defaults: &[] },
    Spec { name: "e6_union_126_6", shape: Shape::Fixed(6, 126), defaults: &[] },
    Spec { name: "equiangular_56_7", shape: Shape::Fixed(7, 56), defaults: &[] },
    Spec { name: "cross_hemicube_78_7", shape: Shape::Fixed(7, 78), defaults: &[] },
    Spec { name: "perm_hemicube_148_7", shape: Shape::Fixed(7, 148), defaults: &[] },
    Spec { name: "e7_union_182_7", shape: Shape::Fixed(7, 182), defaults: &[] },
    Spec { name: "edge_mid_antipodes_72_8", shape: Shape::Fixed(8, 72), defaults: &[] },
    Spec { name: "e8_240_8", shape: Shape::Fixed(8, 240), defaults: &[] },
    Spec { name: "ninety_six_96_9", shape: Shape::Fixed(9, 96), defaults: &[] },
    Spec { name: "forty_40_10", shape: Shape::Fixed(10, 40), defaults: &[] },
    Spec {
        name: "competitor_40_10",
        shape: Shape::Fixed(10, 40),
        defaults: &[("alpha", 0.174_820_490_905_750_94)],
    },
    Spec { name: "hs_subconstituent_42_14", shape: Shape::Fixed(14, 42), defaults: &[] },
    Spec { name: "gram64_64_14", shape: Shape::Fixed(14, 64), defaults: &[] },
    Spec { name: "nordstrom_64_14", shape: Shape::Fixed(14, 64), defaults: &[] },
    Spec { name: "nordstrom_128_15", shape: Shape::Fixed(15, 128), defaults: &[] },
    Spec { name: "nordstrom_256_16", shape: Shape::Fixed(16, 256), defaults: &[] },
];

/// Every catalog name, in catalog order.
pub fn catalog_names() -> Vec<&'static str> {
    SPECS.iter().map(|s| s.name).collect()
}

impl CatalogEntry {
    /// Resolves `name` with `params` overriding the entry's defaults.
    ///
    /// `ngon_<N>_2` is accepted as a shorthand for `ngon` with parameter `N`.
    pub fn new(name: &str, params: &[(&str, f64)]) -> Result<Self> {
        if let Some(count) = name.strip_prefix("ngon_").and_then(|r| r.strip_suffix("_2")) {
            if let Ok(count) = count.parse::<usize>() {
                let mut all = vec![("N", count as f64)];
                all.extend_from_slice(params);
                return Self::new("ngon", &all);
            }
        }
        let spec = SPECS.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
        for (k, _) in params {
            if !spec.defaults.iter().any(|(d, _)| d == k) {
                return Err(Error::ParameterOutOfRange(format!("entry `{name}` has no parameter `{k}`")));
            }
        }
        let resolved: Vec<(String, f64)> = spec
            .defaults
            .iter()
            .map(|&(k, v)| {
                let v = params.iter().rev().find(|(p, _)| *p == k).map_or(v, |&(_, v)| v);
                (k.to_string(), v)
            })
            .collect();
        let lookup = |k: &str| resolved.iter().find(|(p, _)| p == k).map_or(f64::NAN, |(_, v)| *v);
        let (n, count) = match spec.shape {
            Shape::Fixed(n, count) => (n, count),
            Shape::Param(f) => f(&lookup)?,
        };
        Ok(CatalogEntry { name: name.to_string(), n, count, params: resolved })
    }

    /// The entry with default parameters.
    pub fn named(name: &str) -> Result<Self> {
        Self::new(name, &[])
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }
}

/// Builds a catalog entry.
pub fn build_catalog(entry: &CatalogEntry) -> Result<PointConfig> {
    let p = |k: &str| entry.param(k).ok_or_else(|| Error::ParameterOutOfRange(format!("missing parameter `{k}`")));
    let config = match entry.name.as_str() {
        "ngon" => ngon(entry.count)?,
        "simplex" => simplex_config(entry.n, entry.count)?,
        "cross_polytope" => cross_polytope(entry.n)?,
        "diplo_simplex" => build_diplo_simplex(entry.n)?,
        "c_n" => build_c_n(entry.n)?,
        "hemicube" => hemicube(entry.n)?,
        "icosahedron_12_3" => icosahedron(),
        "icosa_dodeca_32_3" => icosahedron().union(&dual_dodecahedron())?,
        "petersen_10_4" => edge_midpoints(4, false),
        "pentagon_pair_10_4" => pentagon_pair(),
        "log_torus_11_4" => log_torus_11(),
        "gram12_family1_12_4" => realize_from_gram(&build_gram_12_in_4_family1(p("a")?)?, 4)?,
        "gram12_family2_12_4" => realize_from_gram(&build_gram_12_in_4_family2(p("a")?)?, 4)?,
        "torus_13_4" => torus_13(),
        "fifteen_15_4" => {
            let g = build_gram_16_in_5(0.0, 0.0)?;
            realize_from_gram(&g.submatrix(&(1..16).collect::<Vec<_>>()), 4)?
        }
        "cell24_24_4" => cell24(),
        "hopf48_48_4" => hopf48(),
        "cell600_120_4" => cell600(),
        "hemicube_16_5" => hemicube(5)?,
        "gram16_16_5" => realize_from_gram(&build_gram_16_in_5(p("a")?, p("b")?)?, 5)?,
        "simplex_mid_face_21_5" => simplex_mid_face(),
        "signs_32_5" => signs_32(),
        "layered_74_5" => layered_74(),
        "schlafli_27_6" => schlafli(),
        "edge_mid_antipodes_42_6" => edge_midpoints(6, true),
        "cross_hemicube_44_6" => cross_polytope(6)?.union(&hemicube(6)?)?,
        "e6_union_126_6" => e6_union(),
        "equiangular_56_7" => equiangular_56(),
        "cross_hemicube_78_7" => cross_polytope(7)?.union(&hemicube(7)?)?,
        "perm_hemicube_148_7" => perm_hemicube(),
        "e7_union_182_7" => e7_union(),
        "edge_mid_antipodes_72_8" => edge_midpoints(8, true),
        "e8_240_8" => e8_config(),
        "ninety_six_96_9" => build_96_in_9(),
        "forty_40_10" => build_40_in_10(),
        "competitor_40_10" => build_40_in_10_competitor(p("alpha")?)?,
        "hs_subconstituent_42_14" => hs_subconstituent(),
        "gram64_64_14" => build_64_in_14_gram(),
        "nordstrom_64_14" => {
            let nr = build_nordstrom_robinson();
            cube_embed(&shorten(&shorten(&nr, 0, false)?, 0, false)?)?
        }
        "nordstrom_128_15" => cube_embed(&shorten(&build_nordstrom_robinson(), 0, false)?)?,
        "nordstrom_256_16" => cube_embed(&build_nordstrom_robinson())?,
        other => return Err(Error::UnknownEntry(other.to_string())),
    };
    debug_assert_eq!((config.dim(), config.len()), (entry.n, entry.count), "{}", entry.name);
    Ok(config)
}

/// Edge midpoints of the regular simplex in `R^n`, optionally with their antipodes.
fn edge_midpoints(n: usize, antipodes: bool) -> PointConfig {
    let s = regular_simplex(n + 1);
    let mut rows = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            rows.push((0..n).map(|k| s[i][k] + s[j][k]).collect::<Vec<_>>());
        }
    }
    if antipodes {
        let neg: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        rows.extend(neg);
    }
    unit_rows(n, rows)
}

/// Edge midpoints of the simplex in `R^5` and its six facet centers.
fn simplex_mid_face() -> PointConfig {
    let s = regular_simplex(6);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            rows.push((0..5).map(|k| s[i][k] + s[j][k]).collect());
        }
    }
    for v in &s {
        rows.push(v.iter().map(|x| -x).collect());
    }
    unit_rows(5, rows)
}

/// A simplex in `R^5`, its antipode, and the 20 points with inner products
/// `+-1/sqrt(5)` with its vertices, three of each sign.
fn signs_32() -> PointConfig {
    let s = regular_simplex(6);
    let mut rows: Vec<Vec<f64>> = s.clone();
    rows.extend(s.iter().map(|v| v.iter().map(|x| -x).collect()));
    for mask in 0..64u32 {
        if mask.count_ones() == 3 {
            let mut x = vec![0.0; 5];
            for (i, v) in s.iter().enumerate() {
                let e = if mask >> i & 1 == 1 { 1.0 } else { -1.0 };
                for k in 0..5 {
                    x[k] += e * v[k];
                }
            }
            rows.push(x);
        }
    }
    unit_rows(5, rows)
}

fn pentagon_pair() -> PointConfig {
    let mut rows = Vec::new();
    for plane in 0..2 {
        for k in 0..5 {
            let t = 2.0 * PI * k as f64 / 5.0;
            let mut r = vec![0.0; 4];
            r[2 * plane] = t.cos();
            r[2 * plane + 1] = t.sin();
            rows.push(r);
        }
    }
    unit_rows(4, rows)
}

/// `(zeta, zeta^5)/sqrt(2)` over the 13th roots of unity.
fn torus_13() -> PointConfig {
    let rows = (0..13)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 13.0;
            vec![t.cos(), t.sin(), (5.0 * t).cos(), (5.0 * t).sin()]
        })
        .collect();
    unit_rows(4, rows)
}

/// The root in `(0, 1)` of `5a^8 - 36a^6 + 51a^4 - 4a^2 - 7`.
pub(crate) fn log_torus_alpha() -> f64 {
    bisect(
        |a| {
            let s = a * a;
            (((5.0 * s - 36.0) * s + 51.0) * s - 4.0) * s - 7.0
        },
        0.0,
        1.0,
        1e-16,
    )
}

/// `(alpha zeta, sqrt(1 - alpha^2) zeta^4)` over the 11th roots of unity.
fn log_torus_11() -> PointConfig {
    let a = log_torus_alpha();
    let b = (1.0 - a * a).sqrt();
    let rows = (0..11)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 11.0;
            vec![a * t.cos(), a * t.sin(), b * (4.0 * t).cos(), b * (4.0 * t).sin()]
        })
        .collect();
    unit_rows(4, rows)
}

/// Orbits of `(1, 0)`, `(0, 1)`, `(+-zeta, zeta)/sqrt(2)` and
/// `(+-i zeta^2, zeta^2)/sqrt(2)` under the 8th roots of unity, `zeta = exp(pi i / 12)`.
fn hopf48() -> PointConfig {
    let c = |t: f64| (t.cos(), t.sin());
    let z = PI / 12.0;
    let r = 1.0 / 2f64.sqrt();
    // (modulus, argument) for each coordinate of the six seeds
    let seeds: [((f64, f64), (f64, f64)); 6] = [
        ((1.0, 0.0), (0.0, 0.0)),
        ((0.0, 0.0), (1.0, 0.0)),
        ((r, z), (r, z)),
        ((r, z + PI), (r, z)),
        ((r, 2.0 * z + PI / 2.0), (r, 2.0 * z)),
        ((r, 2.0 * z - PI / 2.0), (r, 2.0 * z)),
    ];
    let mut rows = Vec::with_capacity(48);
    for ((m1, a1), (m2, a2)) in seeds {
        for k in 0..8 {
            let w = PI * k as f64 / 4.0;
            let (c1, s1) = c(a1 + w);
            let (c2, s2) = c(a2 + w);
            rows.push(vec![m1 * c1, m1 * s1, m2 * c2, m2 * s2]);
        }
    }
    unit_rows(4, rows)
}

/// Equatorial 24-cell, two dual 24-cells at heights `+-sqrt(sqrt(5) - 2)`, and the poles.
fn layered_74() -> PointConfig {
    let h = (5f64.sqrt() - 2.0).sqrt();
    let rho = (1.0 - h * h).sqrt();
    let lift = |c: &PointConfig, height: f64, scale: f64| -> Vec<Vec<f64>> {
        c.points().map(|p| p.iter().map(|x| scale * x).chain(std::iter::once(height)).collect()).collect()
    };
    let mut rows = vec![vec![0.0, 0.0, 0.0, 0.0, 1.0], vec![0.0, 0.0, 0.0, 0.0, -1.0]];
    rows.extend(lift(&cell24(), 0.0, 1.0));
    rows.extend(lift(&cell24_dual(), h, rho));
    rows.extend(lift(&cell24_dual(), -h, rho));
    unit_rows(5, rows)
}

/// Permutations of `(+-1, +-1, 0^5)/sqrt(2)` and the even hemicube in `R^7`.
fn perm_hemicube() -> PointConfig {
    let mut rows = Vec::new();
    for i in 0..7 {
        for j in i + 1..7 {
            for si in [1.0, -1.0] {
                for sj in [1.0, -1.0] {
                    let mut r = vec![0.0; 7];
                    r[i] = si;
                    r[j] = sj;
                    rows.push(r);
                }
            }
        }
    }
    let base = unit_rows(7, rows);
    base.union(&hemicube(7).expect("dimension 7 is valid")).expect("same dimension")
}

/// Adjacency of the Hoffman-Singleton graph: pentagons `P_h`, pentagrams `Q_i`,
/// and `P_h(j) ~ Q_i(h i + j)`.
pub(crate) fn hoffman_singleton() -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; 50]; 50];
    let p = |h: usize, j: usize| 5 * h + j % 5;
    let q = |i: usize, j: usize| 25 + 5 * i + j % 5;
    let mut join = |a: usize, b: usize| {
        adj[a][b] = true;
        adj[b][a] = true;
    };
    for h in 0..5 {
        for j in 0..5 {
            join(p(h, j), p(h, j + 1));
            join(q(h, j), q(h, j + 2));
            for i in 0..5 {
                join(p(h, j), q(i, h * i + j));
            }
        }
    }
    adj
}

/// Vertices at distance 2 from vertex 0 of the Hoffman-Singleton graph, with
/// inner products `-1/2` (adjacent), `1/10` (one common neighbor among them)
/// and `-1/5` (otherwise).
fn hs_subconstituent() -> PointConfig {
    let adj = hoffman_singleton();
    let h: Vec<usize> = (1..50).filter(|&v| !adj[0][v]).collect();
    let m = h.len();
    let g = DMatrix::from_fn(m, m, |a, b| {
        if a == b {
            1.0
        } else if adj[h[a]][h[b]] {
            -0.5
        } else if h.iter().any(|&c| adj[h[a]][c] && adj[h[b]][c]) {
            0.1
        } else {
            -0.2
        }
    });
    let gram = GramMatrix::new(g).expect("symmetric by construction");
    realize_from_gram(&gram, 14).expect("second subconstituent Gram matrix has rank 14")
}
