//! Command-line front end for `minhom-core`: JSON complexes in, JSON bases
//! out.

pub mod document;
pub mod run;

pub use document::{ComplexDocument, ResultDocument};
pub use run::{execute, run, Cli, Command, RunError};
