use alloc::string::String;

use crate::z2::{ShapeError, Singular};

/// Failures of the basis pipelines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("support invariant broken: {0}")]
    SupportInvariant(Singular),
    /// An internal invariant that the algorithms guarantee did not hold.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("candidate set does not span H_{dim} (rank {rank} of {expected})")]
    SpanFailure {
        dim: usize,
        rank: usize,
        expected: usize,
    },
    #[error("oracle guard: cycle space dimension {dimension} exceeds limit {limit}")]
    Guard { dimension: usize, limit: usize },
    #[error("not a cycle: boundary is nonzero")]
    NotACycle,
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("vertex function missing or malformed")]
    VertexFunction,
}
