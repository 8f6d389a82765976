//! Argument parsing, command dispatch, and exit codes.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use minhom_core::approx::approx_basis;
use minhom_core::hd_persistence::hd_minimal_basis;
use minhom_core::minbasis::minimal_homology_basis;
use minhom_core::oracle::oracle_min_basis;
use minhom_core::{Error, PathDominatedDistance, SimplicialComplex, SizeMeasure, ValueMetric};

use crate::document::{CertificateOut, ComplexDocument, ConfigEcho, ResultDocument, Timing};

#[derive(Debug, Clone, Parser)]
#[command(name = "minhom", version, about = "Minimal homology bases over Z2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Complex document (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Where to write the result; stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub measure: Option<MeasureArg>,
    #[arg(long, global = true, value_enum, default_value_t = DistanceArg::Graph)]
    pub distance: DistanceArg,
    /// Homology dimension for `hd` and `rank`.
    #[arg(long, global = true, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Root sampling constant for `approx`.
    #[arg(long, global = true, default_value_t = 2.0)]
    pub c0: f64,
    /// Largest cycle-space dimension the oracle will enumerate.
    #[arg(long, global = true, default_value_t = 25)]
    pub max_oracle_edges: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Exact minimal basis of H1.
    Exact,
    /// Approximate basis from sampled candidate cycles.
    Approx,
    /// Minimal basis of H_dim under the radius measure.
    Hd,
    /// Betti number of dimension `--dim`.
    Rank,
    /// Brute-force minimal basis of H1.
    Oracle,
    /// Check the complex and report every problem.
    Validate,
}

impl Command {
    const fn name(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Approx => "approx",
            Self::Hd => "hd",
            Self::Rank => "rank",
            Self::Oracle => "oracle",
            Self::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Sum,
    Radius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistanceArg {
    Graph,
    Function,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Parse(String),
    #[error("invalid complex: {}", .0.join("; "))]
    Validate(Vec<String>),
    #[error("{0}")]
    Guard(String),
    #[error("internal invariant: {0}")]
    Internal(String),
}

impl RunError {
    #[must_use]
    pub const fn exit_code(&self) -> u8 {
        match self {
            Self::Parse(_) => 2,
            Self::Validate(_) => 3,
            Self::Guard(_) => 4,
            Self::Internal(_) => 5,
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Guard { .. } => Self::Guard(e.to_string()),
            Error::Unsupported(_) => Self::Parse(e.to_string()),
            Error::VertexFunction => Self::Validate(vec![e.to_string()]),
            _ => Self::Internal(e.to_string()),
        }
    }
}

/// Runs one command and writes its document.
pub fn run(cli: &Cli) -> Result<(), RunError> {
    let doc = execute(cli)?;
    let text = doc.to_json();
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| RunError::Parse(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if doc.violations.is_empty() {
        Ok(())
    } else {
        Err(RunError::Validate(doc.violations))
    }
}

/// Runs one command and returns its document without writing it. A
/// `validate` run on a broken complex returns the document with its
/// violations listed.
pub fn execute(cli: &Cli) -> Result<ResultDocument, RunError> {
    let start = Instant::now();
    let input = cli
        .input
        .as_ref()
        .ok_or_else(|| RunError::Parse("--input is required".into()))?;
    let text = std::fs::read_to_string(input)
        .map_err(|e| RunError::Parse(format!("cannot read {}: {e}", input.display())))?;
    let k = ComplexDocument::parse(&text)
        .and_then(|d| d.to_complex())
        .map_err(RunError::Parse)?;
    let measure = match (cli.command, cli.measure) {
        (Command::Hd, Some(MeasureArg::Sum)) => {
            return Err(RunError::Parse("hd uses the radius measure only".into()));
        }
        (Command::Hd, _) | (_, Some(MeasureArg::Radius)) => SizeMeasure::Radius,
        _ => SizeMeasure::SumOfWeights,
    };
    let config = ConfigEcho {
        command: cli.command.name().into(),
        input: input.display().to_string(),
        measure: match measure {
            SizeMeasure::SumOfWeights => "sum".into(),
            SizeMeasure::Radius => "radius".into(),
        },
        distance: match cli.distance {
            DistanceArg::Graph => "graph".into(),
            DistanceArg::Function => "function".into(),
        },
        dim: cli.dim,
        seed: cli.seed,
        c0: cli.c0,
        max_oracle_edges: cli.max_oracle_edges,
    };
    let violations: Vec<String> = k.validate().iter().map(ToString::to_string).collect();
    let mut doc = match cli.command {
        Command::Validate => {
            let mut doc = ResultDocument::new(config, 1, 0);
            doc.violations = violations;
            if doc.violations.is_empty() {
                doc.g = k.betti_1();
            }
            doc
        }
        _ if !violations.is_empty() => return Err(RunError::Validate(violations)),
        Command::Rank => {
            if cli.dim == 0 {
                return Err(RunError::Parse("--dim must be at least 1".into()));
            }
            ResultDocument::new(config, cli.dim, k.betti(cli.dim))
        }
        command => solve(cli, command, config, &k, measure)?,
    };
    doc.timing = Timing {
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(doc)
}

fn solve(
    cli: &Cli,
    command: Command,
    config: ConfigEcho,
    k: &SimplicialComplex,
    measure: SizeMeasure,
) -> Result<ResultDocument, RunError> {
    let d = match cli.distance {
        DistanceArg::Graph => PathDominatedDistance::graph(k),
        DistanceArg::Function => PathDominatedDistance::function(k, ValueMetric::Euclidean)?,
    };
    let dim = if command == Command::Hd { cli.dim } else { 1 };
    let mut certificate = None;
    let basis = match command {
        Command::Exact => minimal_homology_basis(&d, measure)?,
        Command::Oracle => oracle_min_basis(&d, measure, cli.max_oracle_edges)?,
        Command::Hd => {
            if cli.dim == 0 {
                return Err(RunError::Parse("--dim must be at least 1".into()));
            }
            hd_minimal_basis(&d, cli.dim)?
        }
        Command::Approx => {
            let (basis, cert) = approx_basis(&d, measure, cli.seed, cli.c0)?;
            certificate = Some(CertificateOut {
                seed: cert.seed,
                c0: cert.c0,
                sample_size: cert.sample_size,
                rounds: cert.rounds,
                roots: cert.roots,
                candidates: cert.candidates,
                size_sequence: cert.size_sequence,
            });
            basis
        }
        Command::Rank | Command::Validate => unreachable!("handled by execute"),
    };
    let mut doc = ResultDocument::new(config, dim, basis.g);
    doc.set_basis(k, &basis);
    doc.certificate = certificate;
    Ok(doc)
}
