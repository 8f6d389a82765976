//! Brute-force ground truth.
//!
//! Everything here is computed from definitions: the whole cycle space is
//! enumerated, distances come from Floyd–Warshall or a minimax fixpoint, and
//! homology independence is tested against the span of triangle boundaries
//! rather than through annotations.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::annotate::annotate_edges;
use crate::candidates::SizeMeasure;
use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::metric::{DistanceKind, PathDominatedDistance};
use crate::minbasis::{BasisCycle, BasisResult};
use crate::z2::{BitMatrix, BitVec, EchelonBasis};

/// Default limit on the cycle-space dimension `L`.
pub const DEFAULT_MAX_DIMENSION: usize = 25;
/// Largest vertex count for path enumeration.
pub const MAX_PATH_VERTICES: usize = 12;

/// All-pairs distances `[x][y] = d(x, y)`.
#[must_use]
pub fn oracle_distances(d: &PathDominatedDistance<'_>) -> Vec<Vec<f64>> {
    let k = d.complex();
    let n = k.n_vertices();
    match d.kind() {
        DistanceKind::GraphShortestPath => {
            let mut m = vec![vec![f64::INFINITY; n]; n];
            for (x, row) in m.iter_mut().enumerate() {
                row[x] = 0.0;
            }
            for e in k.edges() {
                m[e.u][e.v] = m[e.u][e.v].min(e.weight);
                m[e.v][e.u] = m[e.v][e.u].min(e.weight);
            }
            for via in 0..n {
                for x in 0..n {
                    for y in 0..n {
                        let alt = m[x][via] + m[via][y];
                        if alt < m[x][y] {
                            m[x][y] = alt;
                        }
                    }
                }
            }
            m
        }
        DistanceKind::FunctionInduced => (0..n)
            .map(|x| {
                let mut row = vec![f64::INFINITY; n];
                row[x] = d.vertex_cost(x, x);
                let mut changed = true;
                while changed {
                    changed = false;
                    for e in k.edges() {
                        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                            let alt = row[a].max(d.vertex_cost(x, b));
                            if alt < row[b] {
                                row[b] = alt;
                                changed = true;
                            }
                        }
                    }
                }
                row
            })
            .collect(),
    }
}

/// A simple path with its ordering key.
#[derive(Debug, Clone, PartialEq)]
pub struct OraclePath {
    pub vertices: Vec<usize>,
    /// Weight sum, or the largest vertex cost from the start.
    pub value: f64,
    /// Whether the path is a shortest path: a geodesic for the graph
    /// distance, non-decreasing in `d(start, ·)` for induced distances.
    pub shortest: bool,
}

impl OraclePath {
    #[must_use]
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.vertices.len() <= 1
    }

    /// Distance, then edge count, then the side holding the smallest vertex
    /// of the symmetric difference of the vertex sets.
    #[must_use]
    pub fn order(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.len().cmp(&other.len()))
            .then_with(|| vertex_set_order(&self.vertices, &other.vertices))
    }
}

fn vertex_set_order(a: &[usize], b: &[usize]) -> Ordering {
    let first_only = |x: &[usize], y: &[usize]| x.iter().filter(|v| !y.contains(v)).min().copied();
    match (first_only(a, b), first_only(b, a)) {
        (Some(x), Some(y)) => x.cmp(&y),
        _ => Ordering::Equal,
    }
}

/// Every simple path between every ordered pair, `[x][y]`, shortest paths
/// first and each group sorted by [`OraclePath::order`].
#[derive(Debug, Clone)]
pub struct AllPaths {
    paths: Vec<Vec<Vec<OraclePath>>>,
}

impl AllPaths {
    #[must_use]
    pub fn paths(&self, x: usize, y: usize) -> &[OraclePath] {
        &self.paths[x][y]
    }

    /// The order-minimal shortest path from `x` to `y`.
    #[must_use]
    pub fn minimal(&self, x: usize, y: usize) -> &OraclePath {
        &self.paths[x][y][0]
    }
}

pub fn oracle_all_shortest_paths(d: &PathDominatedDistance<'_>) -> Result<AllPaths, Error> {
    let k = d.complex();
    let n = k.n_vertices();
    if n > MAX_PATH_VERTICES {
        return Err(Error::Guard {
            dimension: n,
            limit: MAX_PATH_VERTICES,
        });
    }
    let dist = oracle_distances(d);
    let mut paths = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        let mut stack = vec![x];
        let mut on_path = vec![false; n];
        on_path[x] = true;
        walk(d, &dist, &mut stack, &mut on_path, 0.0, &mut paths[x]);
        for group in &mut paths[x] {
            group.sort_by(|a: &OraclePath, b: &OraclePath| {
                b.shortest
                    .cmp(&a.shortest)
                    .then_with(|| a.order(b))
                    .then_with(|| a.vertices.cmp(&b.vertices))
            });
        }
    }
    Ok(AllPaths { paths })
}

fn walk(
    d: &PathDominatedDistance<'_>,
    dist: &[Vec<f64>],
    stack: &mut Vec<usize>,
    on_path: &mut [bool],
    value: f64,
    out: &mut [Vec<OraclePath>],
) {
    let x = stack[0];
    let y = *stack.last().expect("nonempty");
    let shortest = match d.kind() {
        DistanceKind::GraphShortestPath => value == dist[x][y],
        DistanceKind::FunctionInduced => stack.windows(2).all(|w| dist[x][w[0]] <= dist[x][w[1]]),
    };
    out[y].push(OraclePath {
        vertices: stack.clone(),
        value,
        shortest,
    });
    let k = d.complex();
    for &(z, e) in k.neighbors(y) {
        if on_path[z] {
            continue;
        }
        let next = match d.kind() {
            DistanceKind::GraphShortestPath => value + k.edge(e).weight,
            DistanceKind::FunctionInduced => value.max(d.vertex_cost(x, z)),
        };
        on_path[z] = true;
        stack.push(z);
        walk(d, dist, stack, on_path, next, out);
        stack.pop();
        on_path[z] = false;
    }
}

/// Edge-short cycles under the order-minimal shortest paths: for every
/// vertex `w` and edge `e = (u, v)`, the union of `e` and the minimal paths
/// from `w` to `u` and `v`, when those three are edge-disjoint.
/// Returns `(w, e, sorted edges)`.
#[must_use]
pub fn oracle_edge_short_cycles(k: &SimplicialComplex, paths: &AllPaths) -> Vec<(usize, usize, Vec<usize>)> {
    let path_edges = |p: &OraclePath| -> Vec<usize> {
        p.vertices
            .windows(2)
            .map(|w| k.edge_between(w[0], w[1]).expect("path edge"))
            .collect()
    };
    let mut out = Vec::new();
    for w in 0..k.n_vertices() {
        for (e, edge) in k.edges().iter().enumerate() {
            let mut a = path_edges(paths.minimal(w, edge.u));
            let b = path_edges(paths.minimal(w, edge.v));
            if a.contains(&e) || b.contains(&e) || a.iter().any(|x| b.contains(x)) {
                continue;
            }
            a.extend(b);
            a.push(e);
            a.sort_unstable();
            out.push((w, e, a));
        }
    }
    out
}

/// Cycle sizes measured from definitions: weight sum, or the smallest
/// radius of a ball around any vertex holding the cycle.
#[derive(Debug, Clone)]
pub struct OracleSizer<'a> {
    k: &'a SimplicialComplex,
    measure: SizeMeasure,
    dist: Vec<Vec<f64>>,
}

impl<'a> OracleSizer<'a> {
    #[must_use]
    pub fn new(d: &PathDominatedDistance<'a>, measure: SizeMeasure) -> Self {
        let dist = match measure {
            SizeMeasure::SumOfWeights => Vec::new(),
            SizeMeasure::Radius => oracle_distances(d),
        };
        Self {
            k: d.complex(),
            measure,
            dist,
        }
    }

    #[must_use]
    pub fn size(&self, edges: &BitVec) -> f64 {
        match self.measure {
            SizeMeasure::SumOfWeights => edges.ones().map(|e| self.k.edge(e).weight).sum(),
            SizeMeasure::Radius => {
                let mut verts: Vec<usize> = edges
                    .ones()
                    .flat_map(|e| [self.k.edge(e).u, self.k.edge(e).v])
                    .collect();
                verts.sort_unstable();
                verts.dedup();
                self.dist
                    .iter()
                    .map(|row| verts.iter().map(|&x| row[x]).fold(0.0, f64::max))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// The cycle space `Z₁` enumerated in full, sorted by size and then by the
/// sorted edge list.
#[derive(Debug, Clone)]
pub struct FullCycleSpace {
    n_edges: usize,
    /// Nonzero elements as edge bit vectors, in order.
    elements: Vec<BitVec>,
    sizes: Vec<f64>,
}

impl FullCycleSpace {
    pub fn enumerate(sizer: &OracleSizer<'_>, limit: usize) -> Result<Self, Error> {
        let k = sizer.k;
        let basis = k.boundary_matrix(1).kernel();
        let l = basis.len();
        if l > limit || l >= usize::BITS as usize {
            return Err(Error::Guard { dimension: l, limit });
        }
        let n_edges = k.n_edges();
        let mut elements = Vec::with_capacity((1usize << l).saturating_sub(1));
        let mut current = BitVec::zeros(n_edges);
        // Gray code: step t flips the basis vector at the lowest set bit of t.
        for t in 1usize..1 << l {
            current.xor_assign(&basis[t.trailing_zeros() as usize]);
            elements.push(current.clone());
        }
        let sizes: Vec<f64> = elements.iter().map(|z| sizer.size(z)).collect();
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by(|&a, &b| {
            sizes[a]
                .total_cmp(&sizes[b])
                .then_with(|| edge_list_order(&elements[a], &elements[b]))
        });
        Ok(Self {
            n_edges,
            sizes: order.iter().map(|&i| sizes[i]).collect(),
            elements: order.into_iter().map(|i| elements[i].clone()).collect(),
        })
    }

    /// Number of nonzero elements, `2^L - 1`.
    #[must_use]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitVec, f64)> {
        self.elements.iter().zip(self.sizes.iter().copied())
    }

    /// Greedy over the sorted elements, keeping each one independent of the
    /// kept ones modulo `seed`.
    fn greedy(&self, seed: &[BitVec], want: usize) -> Vec<(BitVec, f64)> {
        let mut span = EchelonBasis::new(self.n_edges);
        for s in seed {
            span.insert(s);
        }
        let mut out = Vec::new();
        for (z, size) in self.iter() {
            if out.len() == want {
                break;
            }
            if span.insert(z) {
                out.push((z.clone(), size));
            }
        }
        out
    }
}

/// Lexicographic order of the sorted edge lists.
fn edge_list_order(a: &BitVec, b: &BitVec) -> Ordering {
    let (mut x, mut y) = (a.ones(), b.ones());
    loop {
        match (x.next(), y.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(p), Some(q)) if p != q => return p.cmp(&q),
            _ => {}
        }
    }
}

/// Minimal homology basis of H₁ by greedy selection over the whole cycle
/// space, with independence taken modulo triangle boundaries.
pub fn oracle_min_basis(
    d: &PathDominatedDistance<'_>,
    measure: SizeMeasure,
    limit: usize,
) -> Result<BasisResult, Error> {
    let k = d.complex();
    let space = FullCycleSpace::enumerate(&OracleSizer::new(d, measure), limit)?;
    let boundaries = k.boundary_matrix(2);
    let seed: Vec<BitVec> = (0..boundaries.cols()).map(|t| boundaries.column(t)).collect();
    let g = k.betti_1();
    let ann = annotate_edges(k);
    let cycles = space
        .greedy(&seed, g)
        .into_iter()
        .map(|(z, size)| BasisCycle {
            dim: 1,
            annotation: ann.sum(z.ones()),
            simplices: z.ones().collect(),
            size,
            root: None,
        })
        .collect();
    Ok(BasisResult { g, cycles })
}

/// Minimal cycle basis of the 1-skeleton: `L` cycles spanning `Z₁`, ignoring
/// triangles. Returns edge sets and sizes.
pub fn oracle_min_cycle_basis(
    d: &PathDominatedDistance<'_>,
    measure: SizeMeasure,
    limit: usize,
) -> Result<Vec<(Vec<usize>, f64)>, Error> {
    let space = FullCycleSpace::enumerate(&OracleSizer::new(d, measure), limit)?;
    let l = d.complex().boundary_matrix(1).kernel().len();
    Ok(space
        .greedy(&[], l)
        .into_iter()
        .map(|(z, s)| (z.ones().collect(), s))
        .collect())
}

/// Whether the edge sets are independent in `Z₁ / B₁`.
#[must_use]
pub fn homologically_independent(k: &SimplicialComplex, cycles: &[Vec<usize>]) -> bool {
    let boundaries = k.boundary_matrix(2);
    let mut span = EchelonBasis::new(k.n_edges());
    for t in 0..boundaries.cols() {
        span.insert(&boundaries.column(t));
    }
    cycles
        .iter()
        .all(|c| span.insert(&BitVec::from_indices(k.n_edges(), c.iter().copied())))
}

/// Smallest total size of a homology basis drawn from `cycles`, by trying
/// every subset of size `g`. Returns `None` when no subset is a basis.
#[must_use]
pub fn best_contained_homology_basis(
    k: &SimplicialComplex,
    cycles: &[(Vec<usize>, f64)],
) -> Option<(Vec<usize>, f64)> {
    let g = k.betti_1();
    let m = cycles.len();
    let mut best: Option<(Vec<usize>, f64)> = None;
    for mask in 0u64..1 << m {
        if mask.count_ones() as usize != g {
            continue;
        }
        let chosen: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let sets: Vec<Vec<usize>> = chosen.iter().map(|&i| cycles[i].0.clone()).collect();
        if !homologically_independent(k, &sets) {
            continue;
        }
        let total: f64 = chosen.iter().map(|&i| cycles[i].1).sum();
        if best.as_ref().is_none_or(|(_, t)| total < *t) {
            best = Some((chosen, total));
        }
    }
    best
}

/// Rank of the boundary-seeded span, for cross-checks.
#[must_use]
pub fn homology_rank(k: &SimplicialComplex, cycles: &[BitVec]) -> usize {
    let mut rows: Vec<BitVec> = cycles.to_vec();
    let boundaries = k.boundary_matrix(2);
    let base = boundaries.rank();
    rows.extend((0..boundaries.cols()).map(|t| boundaries.column(t)));
    BitMatrix::from_rows(k.n_edges(), &rows).rank() - base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sum_basis(k: &SimplicialComplex) -> BasisResult {
        oracle_min_basis(
            &PathDominatedDistance::graph(k),
            SizeMeasure::SumOfWeights,
            DEFAULT_MAX_DIMENSION,
        )
        .unwrap()
    }

    #[test]
    fn fixture_sizes() {
        assert!(sum_basis(&fixtures::octahedron()).cycles.is_empty());
        assert_eq!(sum_basis(&fixtures::theta()).size_sequence(), vec![3.0, 3.0]);
        assert_eq!(sum_basis(&fixtures::four_cycle()).size_sequence(), vec![4.0]);
        let torus = sum_basis(&fixtures::csaszar_torus());
        assert_eq!(torus.size_sequence(), vec![3.0, 3.0]);
        assert_eq!(torus.annotation_rank(), 2);
    }

    #[test]
    fn theta_enumerates_three_nonzero_cycles() {
        let k = fixtures::theta();
        let d = PathDominatedDistance::graph(&k);
        let space =
            FullCycleSpace::enumerate(&OracleSizer::new(&d, SizeMeasure::SumOfWeights), 25).unwrap();
        let sizes: Vec<f64> = space.iter().map(|(_, s)| s).collect();
        assert_eq!(sizes, vec![3.0, 3.0, 4.0]);
    }

    #[test]
    fn radius_of_square() {
        let k = fixtures::four_cycle();
        let r = oracle_min_basis(&PathDominatedDistance::graph(&k), SizeMeasure::Radius, 25).unwrap();
        assert_eq!(r.size_sequence(), vec![2.0]);
    }

    #[test]
    fn guard_refuses_large_spaces() {
        let k = fixtures::csaszar_torus();
        let err = oracle_min_basis(&PathDominatedDistance::graph(&k), SizeMeasure::SumOfWeights, 10)
            .unwrap_err();
        assert_eq!(err, Error::Guard { dimension: 15, limit: 10 });
    }

    #[test]
    fn path_graph_has_unique_paths() {
        let k = SimplicialComplex::from_parts(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)], []);
        let all = oracle_all_shortest_paths(&PathDominatedDistance::graph(&k)).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(all.paths(x, y).len(), 1);
            }
        }
    }

    #[test]
    fn square_opposite_pairs_have_two_ordered_paths() {
        let k = fixtures::four_cycle();
        let all = oracle_all_shortest_paths(&PathDominatedDistance::graph(&k)).unwrap();
        let p = all.paths(0, 2);
        assert_eq!(p.len(), 2);
        assert!(p.iter().all(|q| q.shortest));
        assert_eq!(p[0].vertices, vec![0, 1, 2]);
        assert_eq!(p[0].order(&p[1]), Ordering::Less);
    }

    #[test]
    fn function_distance_is_minimax() {
        let k = fixtures::four_cycle().with_vertex_function(vec![vec![0.0], vec![5.0], vec![1.0], vec![2.0]]);
        let d = PathDominatedDistance::function(&k, crate::metric::ValueMetric::Euclidean).unwrap();
        let dist = oracle_distances(&d);
        // from 0, reaching 2 through 3 costs max(2, 1)
        assert_eq!(dist[0][2], 2.0);
        assert_eq!(dist[0][1], 5.0);
    }
}
