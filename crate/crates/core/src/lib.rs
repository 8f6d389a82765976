//! Minimal homology bases of weighted simplicial complexes over Z₂.
//!
//! The crate is `no_std` and needs only `alloc`. Pipelines:
//!
//! - [`minbasis`]: exact minimal basis of H₁ by the divide-and-conquer
//!   support-vector method over Horton-style candidate cycles.
//! - [`approx`]: approximate basis from a sampled candidate set via the
//!   earliest basis of the candidate annotation matrix.
//! - [`hd_persistence`]: minimal basis of H_d under the radius measure from
//!   geodesic-ball filtrations.
//! - [`oracle`]: brute force over the whole cycle space, for verification.
//!
//! Sizes are either edge-weight sums or radii under a path-dominated distance
//! ([`metric`]), which is either the weighted graph distance or the distance
//! induced by a vertex function.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod annotate;
pub mod approx;
pub mod candidates;
pub mod complex;
mod error;
pub mod fixtures;
pub mod hd_persistence;
pub mod metric;
pub mod minbasis;
pub mod oracle;
pub mod z2;

pub use annotate::AnnotationTable;
pub use candidates::{CandidateCycle, HortonSet, SizeMeasure};
pub use complex::{ChainVector, Edge, SimplicialComplex, Violation};
pub use error::Error;
pub use metric::{DistanceKind, PathDominatedDistance, ShortestPathTree, ValueMetric};
pub use minbasis::{BasisCycle, BasisResult};
pub use z2::{BitMatrix, BitVec};
