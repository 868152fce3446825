//! Error type shared across the toolkit.

use thiserror::Error;

/// Unified error type for all toolkit operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a precondition (bad cardinality, dimension
    /// mismatch, value out of range, non-finite input).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Requested dimensions overflow or cannot be allocated.
    #[error("dimension overflow: {0}")]
    Sizing(String),

    /// A value left the mathematical domain of a formula (negative
    /// radicand, invalid constant combination).
    #[error("domain error: {0}")]
    Domain(String),

    /// Numerically rank-deficient input where full rank is required.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A combinatorial sweep would exceed the configured budget.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// The LP iteration limit was reached before termination.
    #[error("iteration limit reached after {iterations} pivots")]
    IterationLimit { iterations: usize },

    /// The measurement vector is not in the range of the matrix: the
    /// recovery program has no feasible point.
    #[error("recovery infeasible: measurements outside the range of the matrix")]
    RecoveryInfeasible,

    /// A zero-weight index set admits a kernel vector, so the weighted
    /// objective is unbounded below over the feasible set.
    #[error("degenerate recovery: zero-weight set contains a null-space direction")]
    RecoveryDegenerate,

    /// A text input could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Filesystem input/output failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for I/O failures, 1 for
    /// everything else (domain/argument/parse errors).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 2,
            _ => 1,
        }
    }
}
