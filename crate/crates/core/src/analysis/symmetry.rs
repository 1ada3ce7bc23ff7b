//! Combinatorial automorphisms and their orthogonal realizations.

use nalgebra::DMatrix;

use crate::config::PointConfig;
use crate::error::{Error, Result};

/// Absolute tolerance for grouping inner products into edge colors.
pub const DEFAULT_COLOR_TOLERANCE: f64 = 1e-9;
/// Allowed residual of an orthogonal realization.
pub const REALIZATION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub order: u128,
    /// Generators as images: point `i` goes to `g[i]`.
    pub generators: Vec<Vec<usize>>,
    /// `None` when the points do not span the space, since realizations are then not unique.
    pub chiral: Option<bool>,
    pub orbits: Vec<Vec<usize>>,
    /// Number of distinct inner products used as edge colors.
    pub colors: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub matrix: DMatrix<f64>,
    pub determinant: f64,
    /// `max_i |Q x_i - x_{g(i)}|`.
    pub residual: f64,
}

/// Colors of the complete graph on the points, by clustered inner product.
/// Color 0 is reserved for the diagonal.
fn edge_colors(config: &PointConfig, tol: f64) -> (Vec<u32>, usize) {
    let n = config.len();
    let mut values: Vec<f64> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            values.push(config.inner(i, j));
        }
    }
    values.sort_by(f64::total_cmp);
    // upper end of each cluster
    let mut bounds: Vec<f64> = Vec::new();
    for (k, &v) in values.iter().enumerate() {
        if k + 1 == values.len() || values[k + 1] - v > tol {
            bounds.push(v);
        }
    }
    let mut colors = vec![0u32; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let t = config.inner(i, j);
            let c = bounds.partition_point(|&b| b < t) as u32 + 1;
            colors[i * n + j] = c;
            colors[j * n + i] = c;
        }
    }
    (colors, bounds.len())
}

struct Graph {
    n: usize,
    colors: Vec<u32>,
    palette: usize,
}

type Partition = Vec<Vec<usize>>;

impl Graph {
    fn color(&self, i: usize, j: usize) -> u32 {
        self.colors[i * self.n + j]
    }

    /// Splits cells until every vertex in a cell sees the same number of
    /// vertices of each color in every cell. Returns the sequence of split
    /// signatures, which must agree between isomorphic inputs.
    fn refine(&self, cells: &mut Partition, trace: &mut Vec<u64>) {
        let mut cell_of = vec![0usize; self.n];
        loop {
            for (k, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = k;
                }
            }
            let stride = self.palette + 1;
            let mut next: Partition = Vec::with_capacity(cells.len());
            let mut codes: Vec<usize> = Vec::with_capacity(self.n);
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    trace.push(1);
                    continue;
                }
                let mut keyed: Vec<(Vec<(usize, u32)>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        codes.clear();
                        codes.extend((0..self.n).map(|u| cell_of[u] * stride + self.color(v, u) as usize));
                        codes.sort_unstable();
                        let mut key: Vec<(usize, u32)> = Vec::new();
                        for &c in &codes {
                            match key.last_mut() {
                                Some((k, m)) if *k == c => *m += 1,
                                _ => key.push((c, 1)),
                            }
                        }
                        (key, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for k in 1..=keyed.len() {
                    if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                        next.push(keyed[start..k].iter().map(|(_, v)| *v).collect());
                        trace.push(fingerprint(&keyed[start].0, k - start));
                        start = k;
                    }
                }
            }
            let changed = next.len() != cells.len();
            *cells = next;
            if !changed {
                return;
            }
        }
    }

    fn is_automorphism(&self, perm: &[usize]) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.color(i, j) == self.color(perm[i], perm[j])))
    }
}

fn fingerprint(key: &[(usize, u32)], size: usize) -> u64 {
    let mut h = crate::rng::finalize(size as u64);
    for &(c, m) in key {
        h = crate::rng::finalize(h ^ ((c as u64) << 20 | m as u64));
    }
    h
}

/// The first smallest cell with more than one vertex.
fn target_cell(cells: &Partition) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(k, c)| (c.len(), *k))
        .map(|(k, _)| k)
}

fn individualize(cells: &mut Partition, cell: usize, v: usize) {
    let pos = cells[cell].iter().position(|&u| u == v).expect("vertex in cell");
    let mut rest = cells[cell].clone();
    rest.remove(pos);
    cells[cell] = vec![v];
    cells.insert(cell + 1, rest);
}

/// Searches for an automorphism mapping the left partition onto the right one.
fn extend(g: &Graph, left: &Partition, right: &Partition) -> Option<Vec<usize>> {
    if left.len() != right.len() || left.iter().zip(right).any(|(a, b)| a.len() != b.len()) {
        return None;
    }
    let Some(t) = target_cell(left) else {
        let mut perm = vec![0; g.n];
        for (a, b) in left.iter().zip(right) {
            perm[a[0]] = b[0];
        }
        return g.is_automorphism(&perm).then_some(perm);
    };
    let v = left[t][0];
    let mut l = left.clone();
    individualize(&mut l, t, v);
    let mut lt = Vec::new();
    g.refine(&mut l, &mut lt);
    for &w in &right[t] {
        let mut r = right.clone();
        individualize(&mut r, t, w);
        let mut rt = Vec::new();
        g.refine(&mut r, &mut rt);
        if rt != lt {
            continue;
        }
        if let Some(p) = extend(g, &l, &r) {
            return Some(p);
        }
    }
    None
}

fn orbit_of(point: usize, generators: &[Vec<usize>]) -> Vec<usize> {
    let mut seen = vec![point];
    let mut k = 0;
    while k < seen.len() {
        let x = seen[k];
        for g in generators {
            if !seen.contains(&g[x]) {
                seen.push(g[x]);
            }
        }
        k += 1;
    }
    seen
}

fn orbit_partition(n: usize, generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for g in generators {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, g[i]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if index[r] == usize::MAX {
            index[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[index[r]].push(i);
    }
    orbits
}

/// Automorphism group of the complete graph whose edges are colored by inner
/// product, clustered at `tol`.
///
/// The base is read off the leftmost path of the search tree; at each level the
/// orbit of the base point under the pointwise stabilizer of the earlier base
/// points is completed by searching for one automorphism per missing image, and
/// the group order is the product of those orbit lengths.
pub fn automorphism_group(config: &PointConfig, tol: f64) -> SymmetryReport {
    let n = config.len();
    let (colors, palette) = edge_colors(config, tol);
    let g = Graph { n, colors, palette };
    let mut root: Partition = vec![(0..n).collect()];
    if n == 0 {
        root.clear();
    }
    g.refine(&mut root, &mut Vec::new());

    // partitions along the leftmost path; path[k] is refined with k base points fixed
    let mut path = vec![root];
    let mut base: Vec<(usize, usize)> = Vec::new();
    while let Some(t) = target_cell(path.last().expect("nonempty")) {
        let mut p = path.last().expect("nonempty").clone();
        let v = p[t][0];
        base.push((t, v));
        individualize(&mut p, t, v);
        g.refine(&mut p, &mut Vec::new());
        path.push(p);
    }

    let mut generators: Vec<Vec<usize>> = Vec::new();
    let mut order: u128 = 1;
    for level in (0..base.len()).rev() {
        let (t, b) = base[level];
        let parent = &path[level];
        // everything found so far fixes base[..=level]
        let mut level_gens = generators.clone();
        let mut orbit = orbit_of(b, &level_gens);
        let left = &path[level + 1];
        let mut lt = Vec::new();
        let mut l = parent.clone();
        individualize(&mut l, t, b);
        g.refine(&mut l, &mut lt);
        for &c in &parent[t] {
            if orbit.contains(&c) {
                continue;
            }
            let mut r = parent.clone();
            individualize(&mut r, t, c);
            let mut rt = Vec::new();
            g.refine(&mut r, &mut rt);
            if rt != lt {
                continue;
            }
            if let Some(p) = extend(&g, left, &r) {
                generators.push(p.clone());
                level_gens.push(p);
                orbit = orbit_of(b, &level_gens);
            }
        }
        order *= orbit.len() as u128;
    }

    let chiral = if config.span_rank(1e-9) < config.dim() {
        None
    } else {
        Some(generators.iter().all(|p| realize_unchecked(config, p).determinant > 0.0))
    };
    let orbits = orbit_partition(n, &generators);
    SymmetryReport { order, generators, chiral, orbits, colors: palette }
}

fn realize_unchecked(config: &PointConfig, perm: &[usize]) -> Realization {
    let dim = config.dim();
    let x = DMatrix::from_row_slice(config.len(), dim, config.coords());
    let y = DMatrix::from_fn(config.len(), dim, |i, k| config.point(perm[i])[k]);
    // maximize tr(Q^T Y^T X)
    let m = y.transpose() * &x;
    let svd = m.svd(true, true);
    let q = svd.u.expect("requested") * svd.v_t.expect("requested");
    let residual = (0..config.len())
        .map(|i| {
            let qx = &q * DMatrix::from_row_slice(dim, 1, config.point(i));
            (0..dim).map(|k| (qx[k] - config.point(perm[i])[k]).powi(2)).sum::<f64>().sqrt()
        })
        .fold(0.0, f64::max);
    let determinant = q.determinant();
    Realization { matrix: q, determinant, residual }
}

/// The orthogonal map `Q` with `Q x_i = x_{perm(i)}`, found by orthogonal Procrustes.
pub fn realize_automorphism(config: &PointConfig, perm: &[usize]) -> Result<Realization> {
    let n = config.len();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::NotAnAutomorphism);
    }
    if config.span_rank(1e-9) < config.dim() {
        return Err(Error::SpanDeficient);
    }
    for i in 0..n {
        for j in i..n {
            if (config.inner(i, j) - config.inner(perm[i], perm[j])).abs() > DEFAULT_COLOR_TOLERANCE {
                return Err(Error::NotAnAutomorphism);
            }
        }
    }
    let r = realize_unchecked(config, perm);
    if r.residual > REALIZATION_TOLERANCE {
        return Err(Error::NotAnAutomorphism);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_40_in_10, cell24, cell600, cross_polytope, icosahedron, ngon, schlafli};

    fn check_generators(c: &PointConfig, r: &SymmetryReport) {
        for g in &r.generators {
            for i in 0..c.len() {
                for j in 0..c.len() {
                    assert!((c.inner(i, j) - c.inner(g[i], g[j])).abs() < 1e-9);
                }
            }
        }
        for o in &r.orbits {
            assert_eq!(r.order % o.len() as u128, 0);
        }
    }

    #[test]
    fn small_orders() {
        let cases: Vec<(PointConfig, u128)> = vec![
            (ngon(7).unwrap(), 14),
            (cross_polytope(3).unwrap(), 48),
            (cross_polytope(4).unwrap(), 384),
            (icosahedron(), 120),
            (cell24(), 1152),
        ];
        for (c, order) in cases {
            let r = automorphism_group(&c, 1e-9);
            assert_eq!(r.order, order);
            assert_eq!(r.orbits.len(), 1);
            assert_eq!(r.chiral, Some(false));
            check_generators(&c, &r);
        }
    }

    #[test]
    fn schlafli_order() {
        let c = schlafli();
        let r = automorphism_group(&c, 1e-9);
        assert_eq!(r.order, 51840);
        check_generators(&c, &r);
    }

    #[test]
    fn cell600_order() {
        let r = automorphism_group(&cell600(), 1e-9);
        assert_eq!(r.order, 14400);
    }

    #[test]
    fn forty_is_chiral() {
        let c = build_40_in_10();
        let r = automorphism_group(&c, 1e-9);
        assert_eq!(r.order, 1920);
        assert_eq!(r.chiral, Some(true));
        for g in &r.generators {
            assert!(realize_automorphism(&c, g).unwrap().determinant > 0.0);
        }
    }

    #[test]
    fn span_deficient_has_no_chirality() {
        let c = ngon(4).unwrap().padded(3).unwrap();
        let r = automorphism_group(&c, 1e-9);
        assert_eq!(r.order, 8);
        assert_eq!(r.chiral, None);
        assert_eq!(realize_automorphism(&c, &[0, 1, 2, 3]).unwrap_err(), Error::SpanDeficient);
    }

    #[test]
    fn realizations() {
        let c = cross_polytope(3).unwrap();
        let id = realize_automorphism(&c, &(0..6).collect::<Vec<_>>()).unwrap();
        assert!((id.matrix.clone() - DMatrix::identity(3, 3)).abs().max() < 1e-12);
        // points are +e_k, -e_k in order; full inversion swaps each pair
        let swap: Vec<usize> = (0..6).map(|i| i ^ 1).collect();
        let inv = realize_automorphism(&c, &swap).unwrap();
        assert!((inv.determinant + 1.0).abs() < 1e-12);
        assert!((inv.matrix + DMatrix::identity(3, 3)).abs().max() < 1e-12);
        assert_eq!(realize_automorphism(&c, &[2, 1, 0, 3, 4, 5]).unwrap_err(), Error::NotAnAutomorphism);
        assert_eq!(realize_automorphism(&c, &[0, 0, 1, 2, 3, 4]).unwrap_err(), Error::NotAnAutomorphism);
    }

    #[test]
    fn rigid_configuration() {
        let c = PointConfig::normalized(
            3,
            &[vec![1.0, 0.0, 0.0], vec![0.3, 1.0, 0.0], vec![0.1, 0.2, 1.0], vec![-1.0, 0.5, 0.7]],
        )
        .unwrap();
        let r = automorphism_group(&c, 1e-9);
        assert_eq!(r.order, 1);
        assert!(r.generators.is_empty());
        assert_eq!(r.chiral, Some(true));
    }
}
