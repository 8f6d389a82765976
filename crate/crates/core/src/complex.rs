//! Weighted simplicial complexes.
//!
//! Vertices are `0..n`. Every simplex is stored as its sorted vertex tuple;
//! the position of a simplex in its dimension's list is its index, and that
//! index is the row/column order of every boundary matrix and chain vector.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::z2::{BitMatrix, BitVec};

/// A weighted edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    /// The endpoint that is not `x`.
    #[inline]
    #[must_use]
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    n_vertices: usize,
    edges: Vec<Edge>,
    triangles: Vec<[usize; 3]>,
    /// `higher[k]` holds the simplices of dimension `k + 3`.
    higher: Vec<Vec<Vec<usize>>>,
    vertex_function: Option<Vec<Vec<f64>>>,
    edge_index: BTreeMap<(usize, usize), usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

/// Something wrong with a complex. Violations are values: [`SimplicialComplex::validate`]
/// lists all of them.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Empty,
    VertexOutOfRange { dim: usize, index: usize },
    DegenerateSimplex { dim: usize, index: usize },
    DuplicateSimplex { dim: usize, first: usize, second: usize },
    MissingFace { dim: usize, index: usize, face: Vec<usize> },
    NegativeWeight { edge: usize, weight: f64 },
    DisconnectedSkeleton { components: usize },
    VertexFunctionShape { vertex: usize, expected: usize, found: usize },
    VertexFunctionValue { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "empty complex: no vertices"),
            Self::VertexOutOfRange { dim, index } => {
                write!(f, "vertex out of range in {dim}-simplex #{index}")
            }
            Self::DegenerateSimplex { dim, index } => {
                write!(f, "repeated vertex in {dim}-simplex #{index}")
            }
            Self::DuplicateSimplex { dim, first, second } => {
                write!(f, "duplicate {dim}-simplex: #{first} and #{second}")
            }
            Self::MissingFace { dim, index, face } => {
                write!(f, "missing face {face:?} of {dim}-simplex #{index}")
            }
            Self::NegativeWeight { edge, weight } => {
                write!(f, "edge #{edge} has invalid weight {weight}")
            }
            Self::DisconnectedSkeleton { components } => {
                write!(f, "disconnected 1-skeleton ({components} components)")
            }
            Self::VertexFunctionShape {
                vertex,
                expected,
                found,
            } => write!(
                f,
                "vertex function at vertex {vertex} has {found} values, expected {expected}"
            ),
            Self::VertexFunctionValue { vertex } => {
                write!(f, "vertex function at vertex {vertex} is not finite")
            }
        }
    }
}

impl SimplicialComplex {
    /// Builds a complex without checking it. Edge endpoints and triangle
    /// vertices are put in canonical (sorted) order; nothing else is changed.
    /// Call [`validate`](Self::validate) or use [`new`](Self::new) for checked
    /// construction.
    #[must_use]
    pub fn from_parts(
        n_vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
        triangles: impl IntoIterator<Item = [usize; 3]>,
    ) -> Self {
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|(a, b, weight)| Edge {
                u: a.min(b),
                v: a.max(b),
                weight,
            })
            .collect();
        let triangles = triangles
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        let mut edge_index = BTreeMap::new();
        let mut adjacency = vec![Vec::new(); n_vertices];
        for (i, e) in edges.iter().enumerate() {
            if e.u == e.v || e.v >= n_vertices {
                continue;
            }
            // duplicates keep the first occurrence; validate() reports them
            if let Entry::Vacant(slot) = edge_index.entry((e.u, e.v)) {
                slot.insert(i);
                adjacency[e.u].push((e.v, i));
                adjacency[e.v].push((e.u, i));
            }
        }
        Self {
            n_vertices,
            edges,
            triangles,
            higher: Vec::new(),
            vertex_function: None,
            edge_index,
            adjacency,
        }
    }

    /// Checked construction.
    pub fn new(
        n_vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
        triangles: impl IntoIterator<Item = [usize; 3]>,
    ) -> Result<Self, Vec<Violation>> {
        Self::from_parts(n_vertices, edges, triangles).validated()
    }

    /// Adds simplices of dimension `dim ≥ 3`; vertex tuples are sorted.
    #[must_use]
    pub fn with_simplices(mut self, dim: usize, simplices: impl IntoIterator<Item = Vec<usize>>) -> Self {
        assert!(dim >= 3, "use from_parts for dimensions below 3");
        let k = dim - 3;
        if self.higher.len() <= k {
            self.higher.resize(k + 1, Vec::new());
        }
        self.higher[k].extend(simplices.into_iter().map(|mut s| {
            s.sort_unstable();
            s
        }));
        self
    }

    #[must_use]
    pub fn with_vertex_function(mut self, values: Vec<Vec<f64>>) -> Self {
        self.vertex_function = Some(values);
        self
    }

    /// Replaces every edge weight.
    #[must_use]
    pub fn with_weights(mut self, weights: &[f64]) -> Self {
        assert_eq!(weights.len(), self.edges.len(), "one weight per edge");
        for (e, &w) in self.edges.iter_mut().zip(weights) {
            e.weight = w;
        }
        self
    }

    pub fn validated(self) -> Result<Self, Vec<Violation>> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(v)
        }
    }

    #[must_use]
    pub const fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    #[must_use]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[must_use]
    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    #[must_use]
    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    #[must_use]
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    #[must_use]
    pub fn vertex_function(&self) -> Option<&[Vec<f64>]> {
        self.vertex_function.as_deref()
    }

    /// `(neighbor, edge index)` pairs of `v`, in edge input order.
    #[must_use]
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    #[must_use]
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    /// Largest dimension with at least one simplex.
    #[must_use]
    pub fn dimension(&self) -> usize {
        if let Some(k) = self.higher.iter().rposition(|s| !s.is_empty()) {
            k + 3
        } else if !self.triangles.is_empty() {
            2
        } else if !self.edges.is_empty() {
            1
        } else {
            0
        }
    }

    #[must_use]
    pub fn count(&self, dim: usize) -> usize {
        match dim {
            0 => self.n_vertices,
            1 => self.edges.len(),
            2 => self.triangles.len(),
            d => self.higher.get(d - 3).map_or(0, Vec::len),
        }
    }

    /// Total number of simplices of all dimensions.
    #[must_use]
    pub fn n_simplices(&self) -> usize {
        (0..=self.dimension()).map(|d| self.count(d)).sum()
    }

    /// Sorted vertex tuple of the `index`-th simplex of dimension `dim`.
    #[must_use]
    pub fn simplex(&self, dim: usize, index: usize) -> Vec<usize> {
        match dim {
            0 => vec![index],
            1 => vec![self.edges[index].u, self.edges[index].v],
            2 => self.triangles[index].to_vec(),
            d => self.higher[d - 3][index].clone(),
        }
    }

    fn simplices_of(&self, dim: usize) -> Vec<Vec<usize>> {
        (0..self.count(dim)).map(|i| self.simplex(dim, i)).collect()
    }

    /// Lookup table from sorted vertex tuple to index for dimension `dim`.
    #[must_use]
    pub fn index_of(&self, dim: usize) -> BTreeMap<Vec<usize>, usize> {
        let mut map = BTreeMap::new();
        for (i, s) in self.simplices_of(dim).into_iter().enumerate() {
            map.entry(s).or_insert(i);
        }
        map
    }

    /// Indices of the codimension-one faces of a simplex that are present.
    #[must_use]
    pub fn faces(&self, dim: usize, index: usize) -> Vec<usize> {
        let s = self.simplex(dim, index);
        match dim {
            0 => Vec::new(),
            1 => s,
            2 => {
                let [a, b, c] = self.triangles[index];
                [(b, c), (a, c), (a, b)]
                    .iter()
                    .filter_map(|&(x, y)| self.edge_between(x, y))
                    .collect()
            }
            d => {
                let lookup = self.index_of(d - 1);
                drop_one(&s)
                    .filter_map(|f| lookup.get(&f).copied())
                    .collect()
            }
        }
    }

    /// Boundary operator ∂_dim as a matrix with one row per
    /// `(dim-1)`-simplex and one column per `dim`-simplex.
    #[must_use]
    pub fn boundary_matrix(&self, dim: usize) -> BitMatrix {
        assert!(dim >= 1, "boundary_matrix requires dim >= 1");
        let rows = self.count(dim - 1);
        let cols = self.count(dim);
        let mut m = BitMatrix::zeros(rows, cols);
        match dim {
            1 => {
                for (j, e) in self.edges.iter().enumerate() {
                    if e.u < rows && e.v < rows && e.u != e.v {
                        m.set(e.u, j, true);
                        m.set(e.v, j, true);
                    }
                }
            }
            2 => {
                for j in 0..cols {
                    for f in self.faces(2, j) {
                        m.set(f, j, true);
                    }
                }
            }
            d => {
                let lookup = self.index_of(d - 1);
                for j in 0..cols {
                    for f in drop_one(&self.simplex(d, j)) {
                        if let Some(&i) = lookup.get(&f) {
                            m.set(i, j, true);
                        }
                    }
                }
            }
        }
        m
    }

    /// Boundary of a chain, as a chain one dimension down.
    #[must_use]
    pub fn boundary(&self, chain: &ChainVector) -> ChainVector {
        let d = chain.dim;
        assert!(d >= 1, "0-chains have no boundary");
        let bits = self
            .boundary_matrix(d)
            .mul_vec(&chain.bits)
            .expect("chain length matches simplex count");
        ChainVector { dim: d - 1, bits }
    }

    /// Z₂ Betti number in dimension `dim`.
    #[must_use]
    pub fn betti(&self, dim: usize) -> usize {
        let n = self.count(dim);
        let rank_down = if dim == 0 {
            0
        } else {
            self.boundary_matrix(dim).rank()
        };
        let rank_up = self.boundary_matrix(dim + 1).rank();
        n - rank_down - rank_up
    }

    /// First Betti number `g = rank H₁`.
    #[must_use]
    pub fn betti_1(&self) -> usize {
        self.betti(1)
    }

    /// Number of connected components of the 1-skeleton.
    #[must_use]
    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.n_vertices];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n_vertices {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &(y, _) in &self.adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    /// Every problem with the complex; empty when it is valid.
    #[must_use]
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.n_vertices == 0 {
            out.push(Violation::Empty);
            return out;
        }
        for dim in 1..=self.dimension() {
            let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let lower = if dim >= 2 { Some(self.index_of(dim - 1)) } else { None };
            for index in 0..self.count(dim) {
                let s = self.simplex(dim, index);
                if s.len() != dim + 1 || s.iter().any(|&x| x >= self.n_vertices) {
                    out.push(Violation::VertexOutOfRange { dim, index });
                    continue;
                }
                if s.windows(2).any(|w| w[0] == w[1]) {
                    out.push(Violation::DegenerateSimplex { dim, index });
                    continue;
                }
                if let Some(&first) = seen.get(&s) {
                    out.push(Violation::DuplicateSimplex {
                        dim,
                        first,
                        second: index,
                    });
                } else {
                    seen.insert(s.clone(), index);
                }
                if let Some(lower) = &lower {
                    for face in drop_one(&s) {
                        if !lower.contains_key(&face) {
                            out.push(Violation::MissingFace { dim, index, face });
                        }
                    }
                }
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.weight.is_nan() || e.weight < 0.0 || !e.weight.is_finite() {
                out.push(Violation::NegativeWeight {
                    edge: i,
                    weight: e.weight,
                });
            }
        }
        let components = self.components();
        if components > 1 {
            out.push(Violation::DisconnectedSkeleton { components });
        }
        if let Some(values) = &self.vertex_function {
            let expected = values.first().map_or(0, Vec::len);
            if values.len() != self.n_vertices {
                out.push(Violation::VertexFunctionShape {
                    vertex: values.len().min(self.n_vertices),
                    expected: self.n_vertices,
                    found: values.len(),
                });
            }
            for (vertex, v) in values.iter().enumerate() {
                if v.len() != expected {
                    out.push(Violation::VertexFunctionShape {
                        vertex,
                        expected,
                        found: v.len(),
                    });
                }
                if v.iter().any(|x| !x.is_finite()) {
                    out.push(Violation::VertexFunctionValue { vertex });
                }
            }
        }
        out
    }

    /// Edge chain of a vertex sequence, each consecutive pair contributing its
    /// edge. Panics when a pair is not an edge.
    #[must_use]
    pub fn chain_from_path(&self, vertices: &[usize]) -> ChainVector {
        let mut bits = BitVec::zeros(self.edges.len());
        for w in vertices.windows(2) {
            let e = self
                .edge_between(w[0], w[1])
                .unwrap_or_else(|| panic!("no edge between {} and {}", w[0], w[1]));
            bits.flip(e);
        }
        ChainVector { dim: 1, bits }
    }
}

/// All codimension-one faces of a sorted tuple, in the order obtained by
/// dropping each vertex in turn.
fn drop_one(s: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..s.len()).map(move |skip| {
        s.iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &x)| x)
            .collect()
    })
}

/// A Z₂ chain: a set of `dim`-simplices given by a bit per simplex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainVector {
    pub dim: usize,
    pub bits: BitVec,
}

impl ChainVector {
    #[must_use]
    pub fn zero(k: &SimplicialComplex, dim: usize) -> Self {
        Self {
            dim,
            bits: BitVec::zeros(k.count(dim)),
        }
    }

    #[must_use]
    pub fn from_simplices(
        k: &SimplicialComplex,
        dim: usize,
        indices: impl IntoIterator<Item = usize>,
    ) -> Self {
        Self {
            dim,
            bits: BitVec::from_indices(k.count(dim), indices),
        }
    }

    #[must_use]
    pub fn is_cycle(&self, k: &SimplicialComplex) -> bool {
        self.dim == 0 || k.boundary(self).bits.is_zero()
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.dim, other.dim, "adding chains of different dimension");
        self.bits.xor_assign(&other.bits);
    }

    /// Indices of the simplices in the chain.
    pub fn simplices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }
}
