//! Horton-style candidate cycles.
//!
//! For a root `p` with shortest-path tree `T_p`, every non-tree edge
//! `e = (u, v)` closes the cycle `C(p, e) = e ∘ Π_p(u, v)`, where
//! `Π_p(u, v)` is the tree path between `u` and `v` with the shared prefix
//! cancelled. The union over all roots contains a minimal homology basis
//! whenever the size measure is minimized by edge-short cycles, which holds
//! for weight sums under the graph distance and for radii under any
//! path-dominated distance.

use alloc::vec::Vec;

use crate::complex::SimplicialComplex;
use crate::metric::{DistanceKind, PathDominatedDistance, ShortestPathTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeMeasure {
    /// Total edge weight.
    SumOfWeights,
    /// Radius of the ball around the generating root that holds the cycle.
    Radius,
}

impl SizeMeasure {
    /// Size of a cycle given its edges and the distances from its root.
    /// Weight sums are accumulated in increasing edge order so equal edge
    /// sets always get bit-identical sizes.
    #[must_use]
    pub fn cycle_size(self, k: &SimplicialComplex, edges: &[usize], root_dist: &[f64]) -> f64 {
        match self {
            Self::SumOfWeights => {
                let mut sorted = edges.to_vec();
                sorted.sort_unstable();
                sorted.iter().map(|&e| k.edge(e).weight).sum()
            }
            Self::Radius => edges
                .iter()
                .flat_map(|&e| {
                    let edge = k.edge(e);
                    [root_dist[edge.u], root_dist[edge.v]]
                })
                .fold(0.0, f64::max),
        }
    }
}

/// An explicit candidate cycle `C(p, e)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateCycle {
    pub root: usize,
    pub nontree_edge: usize,
    /// Edge indices, sorted.
    pub edges: Vec<usize>,
    pub size: f64,
}

/// Compact record of one candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateKey {
    pub root: u32,
    pub edge: u32,
    pub size: f64,
}

/// All candidate cycles of a set of roots, sorted by `(size, root, edge)`.
///
/// Cycles are stored as `(root, non-tree edge, size)` and rebuilt from the
/// retained trees on demand.
#[derive(Debug, Clone)]
pub struct HortonSet {
    measure: SizeMeasure,
    kind: DistanceKind,
    /// Trees indexed by root vertex; `None` for roots that were not used.
    trees: Vec<Option<ShortestPathTree>>,
    roots: Vec<usize>,
    keys: Vec<CandidateKey>,
    endpoints: Vec<(usize, usize)>,
}

/// Candidates from every vertex.
#[must_use]
pub fn horton_set(d: &PathDominatedDistance<'_>, measure: SizeMeasure) -> HortonSet {
    let roots: Vec<usize> = (0..d.complex().n_vertices()).collect();
    horton_set_for_roots(d, measure, &roots)
}

/// Candidates from the listed roots only.
#[must_use]
pub fn horton_set_for_roots(
    d: &PathDominatedDistance<'_>,
    measure: SizeMeasure,
    roots: &[usize],
) -> HortonSet {
    let k = d.complex();
    let mut trees: Vec<Option<ShortestPathTree>> = (0..k.n_vertices()).map(|_| None).collect();
    let mut keys = Vec::new();
    let mut used_roots = Vec::new();
    for &p in roots {
        if trees[p].is_some() {
            continue;
        }
        let tree = d.build_spt(p);
        for (e, edge) in k.edges().iter().enumerate() {
            if tree.is_tree_edge(e) {
                continue;
            }
            let mut edges = tree.path_between(edge.u, edge.v).0;
            edges.push(e);
            let size = measure.cycle_size(k, &edges, &tree.dist);
            keys.push(CandidateKey {
                root: p as u32,
                edge: e as u32,
                size,
            });
        }
        trees[p] = Some(tree);
        used_roots.push(p);
    }
    keys.sort_by(|a, b| {
        a.size
            .total_cmp(&b.size)
            .then(a.root.cmp(&b.root))
            .then(a.edge.cmp(&b.edge))
    });
    used_roots.sort_unstable();
    HortonSet {
        measure,
        kind: d.kind(),
        trees,
        roots: used_roots,
        keys,
        endpoints: k.edges().iter().map(|e| (e.u, e.v)).collect(),
    }
}

impl HortonSet {
    #[must_use]
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    #[must_use]
    pub const fn measure(&self) -> SizeMeasure {
        self.measure
    }

    #[must_use]
    pub const fn distance_kind(&self) -> DistanceKind {
        self.kind
    }

    /// Roots that generated candidates, ascending.
    #[must_use]
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    #[must_use]
    pub fn keys(&self) -> &[CandidateKey] {
        &self.keys
    }

    /// Length of the per-vertex tree table.
    #[must_use]
    pub fn trees_len(&self) -> usize {
        self.trees.len()
    }

    /// Endpoints of edge `e`.
    #[must_use]
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.endpoints[e]
    }

    #[must_use]
    pub fn tree(&self, root: usize) -> &ShortestPathTree {
        self.trees[root].as_ref().expect("root was used")
    }

    /// Edges of the `i`-th candidate, sorted.
    #[must_use]
    pub fn edges(&self, i: usize) -> Vec<usize> {
        let key = self.keys[i];
        let (u, v) = self.endpoints[key.edge as usize];
        let mut edges = self.tree(key.root as usize).path_between(u, v).0;
        edges.push(key.edge as usize);
        edges.sort_unstable();
        edges
    }

    #[must_use]
    pub fn cycle(&self, i: usize) -> CandidateCycle {
        let key = self.keys[i];
        CandidateCycle {
            root: key.root as usize,
            nontree_edge: key.edge as usize,
            edges: self.edges(i),
            size: key.size,
        }
    }

    pub fn cycles(&self) -> impl Iterator<Item = CandidateCycle> + '_ {
        (0..self.len()).map(|i| self.cycle(i))
    }

    /// Whether the `i`-th candidate is edge-short at its own root: the tree
    /// paths to the two endpoints of its edge meet only at the root, and both
    /// are path-dominated shortest paths.
    #[must_use]
    pub fn edge_short(&self, i: usize, k: &SimplicialComplex) -> bool {
        let key = self.keys[i];
        let (u, v) = self.endpoints[key.edge as usize];
        let tree = self.tree(key.root as usize);
        tree.path_between(u, v).1 == tree.root
            && is_dominated_path(k, self.kind, tree, u)
            && is_dominated_path(k, self.kind, tree, v)
    }
}

/// Edge-short check for a standalone candidate, rebuilding its root's tree.
#[must_use]
pub fn edge_short_witness(c: &CandidateCycle, d: &PathDominatedDistance<'_>) -> bool {
    let k = d.complex();
    let tree = d.build_spt(c.root);
    let e = k.edge(c.nontree_edge);
    if tree.is_tree_edge(c.nontree_edge) || !c.edges.contains(&c.nontree_edge) {
        return false;
    }
    let (mut path, meet) = tree.path_between(e.u, e.v);
    path.push(c.nontree_edge);
    path.sort_unstable();
    path == c.edges
        && meet == c.root
        && is_dominated_path(k, d.kind(), &tree, e.u)
        && is_dominated_path(k, d.kind(), &tree, e.v)
}

/// Checks the tree path to `v` against the distances stored in the tree:
/// geodesic for graph distances, non-decreasing for induced distances.
fn is_dominated_path(
    k: &SimplicialComplex,
    kind: DistanceKind,
    tree: &ShortestPathTree,
    v: usize,
) -> bool {
    let path = tree.path_to(v);
    match kind {
        DistanceKind::GraphShortestPath => {
            let mut acc = 0.0;
            for w in path.windows(2) {
                let e = k.edge_between(w[0], w[1]).expect("tree edge exists");
                acc += k.edge(e).weight;
                if acc != tree.dist[w[1]] {
                    return false;
                }
            }
            true
        }
        DistanceKind::FunctionInduced => path.windows(2).all(|w| tree.dist[w[0]] <= tree.dist[w[1]]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn four_cycle_one_candidate_per_root() {
        let k = fixtures::four_cycle();
        let d = PathDominatedDistance::graph(&k);
        let h = horton_set(&d, SizeMeasure::SumOfWeights);
        assert_eq!(h.len(), 4);
        for c in h.cycles() {
            assert_eq!(c.edges, alloc::vec![0, 1, 2, 3]);
            assert_eq!(c.size, 4.0);
        }
    }

    #[test]
    fn filled_triangle_candidates() {
        let k = fixtures::filled_triangle();
        let d = PathDominatedDistance::graph(&k);
        let h = horton_set(&d, SizeMeasure::SumOfWeights);
        assert_eq!(h.len(), 3);
        assert!(h.cycles().all(|c| c.size == 3.0 && c.edges.len() == 3));
    }

    #[test]
    fn theta_contains_triangles_and_square() {
        let k = fixtures::theta();
        let d = PathDominatedDistance::graph(&k);
        let h = horton_set(&d, SizeMeasure::SumOfWeights);
        let sizes: Vec<f64> = h.keys().iter().map(|c| c.size).collect();
        assert!(sizes.contains(&3.0));
        assert!(sizes.contains(&4.0));
        let bound = k.n_vertices() * (k.n_edges() - k.n_vertices() + 1);
        assert!(h.len() <= bound);
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn sizes_by_measure() {
        let k = fixtures::filled_triangle();
        let dist = PathDominatedDistance::graph(&k).distances_from(0);
        assert_eq!(SizeMeasure::SumOfWeights.cycle_size(&k, &[0, 1, 2], &dist), 3.0);
        assert_eq!(SizeMeasure::Radius.cycle_size(&k, &[0, 1, 2], &dist), 1.0);
    }

    #[test]
    fn theta_triangles_are_edge_short_from_vertex_zero() {
        // root 0 sees 0-1-2 and 0-2-3 as the chord's two triangles
        let k = fixtures::theta();
        let d = PathDominatedDistance::graph(&k);
        let h = horton_set(&d, SizeMeasure::SumOfWeights);
        for (i, c) in h.cycles().enumerate() {
            assert_eq!(edge_short_witness(&c, &d), h.edge_short(i, &k));
            if c.root == 0 && c.size == 3.0 {
                assert!(edge_short_witness(&c, &d));
            }
        }
    }

    #[test]
    fn shared_prefix_is_not_edge_short() {
        // path 0-1 then a triangle 1-2-3 hanging off it; from root 0 the
        // cycle through edge 2-3 shares the tree edge 0-1
        let k = SimplicialComplex::from_parts(
            4,
            [(0, 1, 1.0), (1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)],
            [],
        );
        let d = PathDominatedDistance::graph(&k);
        let h = horton_set(&d, SizeMeasure::SumOfWeights);
        let i = (0..h.len()).find(|&i| h.keys()[i].root == 0).unwrap();
        assert!(!h.edge_short(i, &k));
        assert!(!edge_short_witness(&h.cycle(i), &d));
    }
}
