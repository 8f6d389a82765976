//! Annotations: a `g`-bit vector per `d`-simplex such that two `d`-cycles are
//! homologous exactly when their summed annotations agree.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{ChainVector, SimplicialComplex};
use crate::error::Error;
use crate::z2::{BitMatrix, BitVec, EchelonBasis};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationTable {
    dim: usize,
    /// One row per `dim`-simplex, `g` columns.
    table: BitMatrix,
}

impl AnnotationTable {
    #[must_use]
    pub const fn dim(&self) -> usize {
        self.dim
    }

    /// Rank of the homology group the annotation describes.
    #[must_use]
    pub const fn g(&self) -> usize {
        self.table.cols()
    }

    #[must_use]
    pub fn simplex(&self, i: usize) -> BitVec {
        self.table.row(i)
    }

    /// Annotations as rows, one per simplex (`n_d × g`).
    #[must_use]
    pub fn as_rows(&self) -> &BitMatrix {
        &self.table
    }

    /// Sum of the annotations of the listed simplices. No cycle check.
    #[must_use]
    pub fn sum(&self, simplices: impl IntoIterator<Item = usize>) -> BitVec {
        let mut words = vec![0u64; self.g().div_ceil(64)];
        for s in simplices {
            for (w, x) in words.iter_mut().zip(self.table.row_words(s)) {
                *w ^= x;
            }
        }
        BitVec::from_words(self.g(), words)
    }

    /// Annotation of a cycle; zero exactly when the cycle bounds.
    pub fn cycle_annotation(&self, k: &SimplicialComplex, z: &ChainVector) -> Result<BitVec, Error> {
        if z.dim != self.dim || z.bits.len() != self.table.rows() {
            return Err(Error::Invariant(alloc::format!(
                "chain of dimension {} does not match a {}-annotation",
                z.dim,
                self.dim
            )));
        }
        if !z.is_cycle(k) {
            return Err(Error::NotACycle);
        }
        Ok(self.sum(z.simplices()))
    }
}

/// Breadth-first spanning tree from vertex 0; returns a tree-edge flag per edge.
pub(crate) fn spanning_tree(k: &SimplicialComplex) -> Vec<bool> {
    let mut tree = vec![false; k.n_edges()];
    let mut seen = vec![false; k.n_vertices()];
    let mut queue = VecDeque::new();
    if k.n_vertices() > 0 {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(x) = queue.pop_front() {
        for &(y, e) in k.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                tree[e] = true;
                queue.push_back(y);
            }
        }
    }
    tree
}

/// Edge annotations through a spanning tree.
///
/// Each non-tree edge is a coordinate of the cycle space `Z₁`. Triangle
/// boundaries written in those coordinates span `B₁`; the annotation map is
/// a basis of the functionals vanishing on `B₁`. Tree edges get zero.
#[must_use]
pub fn annotate_edges(k: &SimplicialComplex) -> AnnotationTable {
    let tree = spanning_tree(k);
    let mut coordinate = vec![usize::MAX; k.n_edges()];
    let mut l = 0;
    for (e, &t) in tree.iter().enumerate() {
        if !t {
            coordinate[e] = l;
            l += 1;
        }
    }
    // B₁ in fundamental-cycle coordinates, one row per triangle (Bᵀ).
    let mut bt = BitMatrix::zeros(k.triangles().len(), l);
    for t in 0..k.triangles().len() {
        for e in k.faces(2, t) {
            if coordinate[e] != usize::MAX {
                bt.flip(t, coordinate[e]);
            }
        }
    }
    let functionals = bt.kernel();
    let g = functionals.len();
    let mut table = BitMatrix::zeros(k.n_edges(), g);
    for (i, f) in functionals.iter().enumerate() {
        for (e, &c) in coordinate.iter().enumerate() {
            if c != usize::MAX && f.get(c) {
                table.set(e, i, true);
            }
        }
    }
    AnnotationTable { dim: 1, table }
}

/// Annotations for `dim`-simplices of any dimension `dim ≥ 1`.
///
/// Takes a basis of the cocycles (functionals vanishing on boundaries) and
/// keeps those independent modulo coboundaries.
#[must_use]
pub fn annotate_simplices(k: &SimplicialComplex, dim: usize) -> AnnotationTable {
    assert!(dim >= 1, "annotations need dim >= 1");
    let n = k.count(dim);
    let cocycles = k.boundary_matrix(dim + 1).transpose().kernel();
    let mut span = EchelonBasis::new(n);
    let down = k.boundary_matrix(dim);
    for r in 0..down.rows() {
        span.insert(&down.row(r));
    }
    let chosen: Vec<BitVec> = cocycles.into_iter().filter(|c| span.insert(c)).collect();
    let table = BitMatrix::from_columns(n, &chosen);
    AnnotationTable { dim, table }
}
