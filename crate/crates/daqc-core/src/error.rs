//! Error type shared across the crate.

use thiserror::Error;

use crate::hamiltonian::CouplingKey;

/// Errors produced by schedule synthesis and analysis.
#[derive(Debug, Error)]
pub enum Error {
    /// Qubit count below the smallest meaningful system.
    #[error("invalid system size n = {n}; need n >= 2")]
    InvalidSize { n: usize },

    /// A coupling is absent from the source Hamiltonian but present in the
    /// problem Hamiltonian, so the linear system has no solution.
    #[error("incompatible pair: source coupling {key} is zero but problem coupling is nonzero")]
    IncompatiblePair { key: CouplingKey },

    /// Every coupling was removed; there is nothing to schedule.
    #[error("empty problem: all couplings removed")]
    EmptyProblem,

    /// The gate-layer enumeration would exceed the configured column cap.
    #[error("sign matrix would have {columns} columns, exceeding cap {cap}")]
    SizeCapExceeded { columns: usize, cap: usize },

    /// Row restriction was asked to keep nothing.
    #[error("empty row selection")]
    EmptySelection,

    /// Vector/matrix shapes or coupling indices do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The numerical method failed to converge or certify its result.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// A work or combination budget was exhausted.
    #[error("budget exceeded: {0}")]
    CapExceeded(String),

    /// Hull input does not span the ambient space (should be unreachable
    /// for full-row-rank sign matrices).
    #[error("degenerate hull: input points do not span the ambient space")]
    DegenerateHull,

    /// An operation that only applies to one model was called on the other.
    #[error("wrong model: {0}")]
    WrongModel(String),

    /// Malformed user input (coupling keys, supports, sign patterns, files).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
