//! Batch front end for the region solvers: parse a scenario file, run the
//! selected schemes at each requested power, and emit one CSV boundary per
//! combination plus a JSON summary with budgets and dominance checks.

pub mod output;
pub mod runner;
pub mod scenario;

use std::path::PathBuf;

use thiserror::Error;

pub use runner::{run, RunOutcome, SchemeChoice};

/// Fatal front-end failures. Per-grid-point solver failures are reported in
/// the output files instead and only soften the exit code to partial.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or invalid scenario file; the message names the file and,
    /// for parse errors, the offending line.
    #[error("{0}")]
    Scenario(String),
    /// Invalid run request, such as an empty scheme list.
    #[error("{0}")]
    Usage(String),
    /// Output file could not be written.
    #[error("writing {path}: {message}")]
    Output { path: String, message: String },
    /// A solver rejected the run configuration outright.
    #[error(transparent)]
    Solver(#[from] ansec::AnError),
}

/// One batch request: which schemes, at which powers, on which scenario.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub scenario: PathBuf,
    pub schemes: Vec<SchemeChoice>,
    /// Transmit powers in dB; converted to linear scale internally.
    pub powers_db: Vec<f64>,
    pub grid_points: usize,
    /// Outer-search accuracy in bits.
    pub eps: f64,
    /// Inner bisection tolerance of the worst-case solvers.
    pub eps_b: f64,
    /// Seed of the sampled certificate checks reported in the summary.
    pub seed: u64,
    pub out_dir: PathBuf,
    /// Additionally emit per-point covariance matrices as JSON.
    pub dump_covariances: bool,
    /// Worker threads for concurrent scheme/power combinations.
    pub workers: usize,
}
