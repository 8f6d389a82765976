//! Path-dominated distances and shortest-path trees with unique paths.
//!
//! A distance `d` is path-dominated when every pair `x, y` is joined by a
//! path along which `d(x, ·)` never exceeds `d(x, y)`; such a path is
//! "shortest" when `d(x, ·)` is non-decreasing along it. Two evaluators are
//! provided: the weighted graph distance, and the distance induced by a
//! vertex function `F`, `d_F(x, y) = min over paths max over path vertices of
//! d_Z(F(x), F(u))`.
//!
//! Among paths with the same distance, trees prefer fewer edges, then the
//! path whose vertex set has the smaller minimum index in the symmetric
//! difference. This order is total on simple paths ending at the same vertex
//! and does not depend on adjacency order.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::complex::SimplicialComplex;
use crate::error::Error;

/// Metric on the codomain of a vertex function.
#[derive(Debug, Clone, PartialEq)]
pub enum ValueMetric {
    Euclidean,
    Chebyshev,
    /// Explicit `n × n` table of `d_Z(F(x), F(y))` indexed by vertex.
    Table(Vec<Vec<f64>>),
}

impl ValueMetric {
    fn eval(&self, values: &[Vec<f64>], x: usize, y: usize) -> f64 {
        match self {
            Self::Euclidean => libm::sqrt(
                values[x]
                    .iter()
                    .zip(&values[y])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum(),
            ),
            Self::Chebyshev => values[x]
                .iter()
                .zip(&values[y])
                .map(|(a, b)| libm::fabs(a - b))
                .fold(0.0, f64::max),
            Self::Table(t) => t[x][y],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceKind {
    GraphShortestPath,
    FunctionInduced,
}

#[derive(Debug, Clone)]
enum Evaluator {
    Graph,
    Function {
        values: Vec<Vec<f64>>,
        metric: ValueMetric,
    },
}

/// A path-dominated distance on the vertices of a complex.
#[derive(Debug, Clone)]
pub struct PathDominatedDistance<'a> {
    complex: &'a SimplicialComplex,
    evaluator: Evaluator,
}

impl<'a> PathDominatedDistance<'a> {
    /// Weighted shortest-path distance of the 1-skeleton.
    #[must_use]
    pub fn graph(complex: &'a SimplicialComplex) -> Self {
        Self {
            complex,
            evaluator: Evaluator::Graph,
        }
    }

    /// Distance induced by the complex's own vertex function.
    pub fn function(complex: &'a SimplicialComplex, metric: ValueMetric) -> Result<Self, Error> {
        let values = complex.vertex_function().ok_or(Error::VertexFunction)?;
        Self::function_with(complex, values.to_vec(), metric)
    }

    /// Distance induced by an explicit vertex function.
    pub fn function_with(
        complex: &'a SimplicialComplex,
        values: Vec<Vec<f64>>,
        metric: ValueMetric,
    ) -> Result<Self, Error> {
        let n = complex.n_vertices();
        let width = values.first().map_or(0, Vec::len);
        let shape_ok = match &metric {
            ValueMetric::Table(t) => t.len() == n && t.iter().all(|r| r.len() == n),
            _ => values.len() == n && values.iter().all(|v| v.len() == width),
        };
        if !shape_ok {
            return Err(Error::VertexFunction);
        }
        Ok(Self {
            complex,
            evaluator: Evaluator::Function { values, metric },
        })
    }

    #[must_use]
    pub fn kind(&self) -> DistanceKind {
        match self.evaluator {
            Evaluator::Graph => DistanceKind::GraphShortestPath,
            Evaluator::Function { .. } => DistanceKind::FunctionInduced,
        }
    }

    #[must_use]
    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    /// `d_Z(F(x), F(u))` for function-induced distances. Panics for the
    /// graph distance, which has no vertex cost.
    #[must_use]
    pub fn vertex_cost(&self, x: usize, u: usize) -> f64 {
        match &self.evaluator {
            Evaluator::Function { values, metric } => metric.eval(values, x, u),
            Evaluator::Graph => panic!("graph distance has no vertex cost"),
        }
    }

    /// Distance of `π ∘ (q, w)` from `root` given the distance of `π`.
    #[inline]
    fn extend(&self, root: usize, dq: f64, edge: usize, w: usize) -> f64 {
        match &self.evaluator {
            Evaluator::Graph => dq + self.complex.edge(edge).weight,
            Evaluator::Function { values, metric } => dq.max(metric.eval(values, root, w)),
        }
    }

    /// `d(root, ·)` for every vertex.
    #[must_use]
    pub fn distances_from(&self, root: usize) -> Vec<f64> {
        self.build_spt(root).dist
    }

    #[must_use]
    pub fn distance(&self, x: usize, y: usize) -> f64 {
        self.build_spt(x).dist[y]
    }

    /// Shortest-path tree rooted at `root` under the distance-then-length
    /// then vertex-set order.
    #[must_use]
    pub fn build_spt(&self, root: usize) -> ShortestPathTree {
        let k = self.complex;
        let n = k.n_vertices();
        let mut tree = ShortestPathTree {
            root,
            parent: vec![None; n],
            dist: vec![f64::INFINITY; n],
            hop_len: vec![usize::MAX; n],
            order: Vec::with_capacity(n),
            tree_edge: vec![false; k.n_edges()],
        };
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        tree.dist[root] = match &self.evaluator {
            Evaluator::Graph => 0.0,
            Evaluator::Function { values, metric } => metric.eval(values, root, root),
        };
        tree.hop_len[root] = 0;
        heap.push(QueueEntry {
            dist: tree.dist[root],
            len: 0,
            vertex: root,
        });
        while let Some(QueueEntry { dist, len, vertex: q }) = heap.pop() {
            if done[q] || dist != tree.dist[q] || len != tree.hop_len[q] {
                continue;
            }
            done[q] = true;
            tree.order.push(q);
            for &(w, e) in k.neighbors(q) {
                if done[w] {
                    continue;
                }
                let cand = self.extend(root, dist, e, w);
                let cand_len = len + 1;
                let better = match cand.total_cmp(&tree.dist[w]) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => match cand_len.cmp(&tree.hop_len[w]) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => {
                            let (incumbent, _) = tree.parent[w].expect("tentative vertex has a parent");
                            tree.branch_min_prefers(q, incumbent)
                        }
                    },
                };
                if better {
                    tree.dist[w] = cand;
                    tree.hop_len[w] = cand_len;
                    tree.parent[w] = Some((q, e));
                    heap.push(QueueEntry {
                        dist: cand,
                        len: cand_len,
                        vertex: w,
                    });
                }
            }
        }
        for v in 0..n {
            if let Some((_, e)) = tree.parent[v] {
                tree.tree_edge[e] = true;
            }
        }
        tree
    }

    /// The ball `B_p^r`: every simplex whose vertices all lie within `r` of
    /// `p`. Always a subcomplex.
    #[must_use]
    pub fn ball(&self, p: usize, r: f64) -> Ball {
        ball_from_distances(self.complex, &self.distances_from(p), p, r)
    }
}

pub(crate) fn ball_from_distances(k: &SimplicialComplex, dist: &[f64], p: usize, r: f64) -> Ball {
    let inside = |s: &[usize]| s.iter().all(|&x| dist[x] <= r);
    let simplices = (0..=k.dimension())
        .map(|d| {
            (0..k.count(d))
                .filter(|&i| inside(&k.simplex(d, i)))
                .collect()
        })
        .collect();
    Ball {
        center: p,
        radius: r,
        simplices,
    }
}

/// A ball subcomplex, as simplex indices of the parent complex per dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: usize,
    pub radius: f64,
    /// `simplices[d]` lists the indices of the `d`-simplices inside.
    pub simplices: Vec<Vec<usize>>,
}

impl Ball {
    #[must_use]
    pub fn vertices(&self) -> &[usize] {
        &self.simplices[0]
    }

    #[must_use]
    pub fn contains(&self, dim: usize, index: usize) -> bool {
        self.simplices
            .get(dim)
            .is_some_and(|s| s.binary_search(&index).is_ok())
    }
}

#[derive(Debug, Clone, Copy)]
struct QueueEntry {
    dist: f64,
    len: usize,
    vertex: usize,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QueueEntry {}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QueueEntry {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then(other.len.cmp(&self.len))
            .then(other.vertex.cmp(&self.vertex))
    }
}

/// Shortest-path tree `T_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPathTree {
    pub root: usize,
    /// `(parent vertex, edge index)`; `None` at the root.
    pub parent: Vec<Option<(usize, usize)>>,
    pub dist: Vec<f64>,
    pub hop_len: Vec<usize>,
    /// Vertices in the order they left the priority queue.
    pub order: Vec<usize>,
    tree_edge: Vec<bool>,
}

impl ShortestPathTree {
    #[must_use]
    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree_edge[e]
    }

    #[must_use]
    pub fn parent_edge(&self, v: usize) -> Option<usize> {
        self.parent[v].map(|(_, e)| e)
    }

    /// Vertices of the tree path from the root to `v`, root first.
    #[must_use]
    pub fn path_to(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut x = v;
        while let Some((p, _)) = self.parent[x] {
            path.push(p);
            x = p;
        }
        path.reverse();
        path
    }

    /// Edge indices of the tree path from the root to `v`, root side first.
    #[must_use]
    pub fn path_edges(&self, v: usize) -> Vec<usize> {
        let mut edges = Vec::with_capacity(self.hop_len[v]);
        let mut x = v;
        while let Some((p, e)) = self.parent[x] {
            edges.push(e);
            x = p;
        }
        edges.reverse();
        edges
    }

    /// Edges of the tree path between `u` and `v` (shared prefix cancelled),
    /// and the meeting vertex.
    #[must_use]
    pub fn path_between(&self, u: usize, v: usize) -> (Vec<usize>, usize) {
        let mut edges = Vec::new();
        let (mut a, mut b) = (u, v);
        while self.hop_len[a] > self.hop_len[b] {
            let (p, e) = self.parent[a].expect("non-root has a parent");
            edges.push(e);
            a = p;
        }
        while self.hop_len[b] > self.hop_len[a] {
            let (p, e) = self.parent[b].expect("non-root has a parent");
            edges.push(e);
            b = p;
        }
        while a != b {
            let (pa, ea) = self.parent[a].expect("non-root has a parent");
            let (pb, eb) = self.parent[b].expect("non-root has a parent");
            edges.push(ea);
            edges.push(eb);
            a = pa;
            b = pb;
        }
        (edges, a)
    }

    /// Whether the tree path to `a` beats the tree path to `b` under the
    /// vertex-set rule: the smaller vertex of the symmetric difference lies
    /// on `a`'s side. Both paths must have the same hop length.
    fn branch_min_prefers(&self, a: usize, b: usize) -> bool {
        let (mut x, mut y) = (a, b);
        let (mut min_a, mut min_b) = (usize::MAX, usize::MAX);
        while x != y {
            min_a = min_a.min(x);
            min_b = min_b.min(y);
            x = self.parent[x].expect("equal depth, distinct vertices").0;
            y = self.parent[y].expect("equal depth, distinct vertices").0;
        }
        min_a < min_b
    }
}
