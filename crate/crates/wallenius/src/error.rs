use thiserror::Error;

/// Errors produced by model construction, evaluation and inference.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid urn: {0}")]
    InvalidUrn(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("infeasible outcome: {0}")]
    InfeasibleOutcome(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("flat likelihood: {0}")]
    FlatLikelihood(String),

    #[error("boundary MLE: {0}")]
    BoundaryMle(String),

    #[error("invalid chain start: {0}")]
    InvalidStart(String),

    #[error("did not converge: {0}")]
    NonConvergence(String),

    #[error("too few samples: {0}")]
    SampleSize(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by malformed or inconsistent *inputs*
    /// (as opposed to failures arising during a computation).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidUrn(_)
                | Error::InvalidWeights(_)
                | Error::DimensionMismatch(_)
                | Error::InfeasibleOutcome(_)
                | Error::Domain(_)
                | Error::InvalidStart(_)
                | Error::Parse { .. }
                | Error::Validation(_)
        )
    }
}
