//! Bit-packed linear algebra over Z₂.
//!
//! Every matrix used by the basis algorithms lives here: annotation tables,
//! support vectors, the edge/support inner-product table, and the
//! cycle-annotation matrices that earliest-basis extraction runs on.
//! Multiplication is word-parallel schoolbook; elimination pivots on the first
//! nonzero row of each column, so every routine is deterministic.

mod matrix;
mod vector;

pub use matrix::{BitMatrix, EchelonBasis};
pub use vector::BitVec;

/// Operand shapes did not conform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("{op}: incompatible shapes {}x{} and {}x{}", left.0, left.1, right.0, right.1)]
pub struct ShapeError {
    pub op: &'static str,
    pub left: (usize, usize),
    pub right: (usize, usize),
}

impl ShapeError {
    fn new(op: &'static str, a: &BitMatrix, b: &BitMatrix) -> Self {
        Self {
            op,
            left: (a.rows(), a.cols()),
            right: (b.rows(), b.cols()),
        }
    }
}

/// A square matrix was not invertible; `rank` is the rank it reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("matrix is singular (rank {rank})")]
pub struct Singular {
    pub rank: usize,
}

pub fn mat_mul(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix, ShapeError> {
    a.mul(b)
}

pub fn mat_inverse(a: &BitMatrix) -> Result<BitMatrix, Singular> {
    a.inverse()
}

#[must_use]
pub fn rank(a: &BitMatrix) -> usize {
    a.rank()
}

#[must_use]
pub fn earliest_basis(d: &BitMatrix) -> alloc::vec::Vec<usize> {
    d.earliest_basis()
}

pub fn solve_linear(a: &BitMatrix, rhs: &BitVec) -> Result<Option<BitVec>, ShapeError> {
    a.solve(rhs)
}
