use thiserror::Error;

use crate::model::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid problem: {0}")]
    InvalidProblem(#[from] ValidationReport),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("majorizer direction is degenerate")]
    DegenerateDirection,

    #[error("iterate coincides with anchor {anchor}")]
    DegenerateAnchor { anchor: usize },

    #[error("accelerated gradient produced a non-finite iterate after {iterations} iterations")]
    NonFiniteIterate { iterations: usize },

    #[error("node {node} did not receive a message from neighbor {neighbor}")]
    MissingNeighborMessage { node: usize, neighbor: usize },

    #[error("cost increased by {delta:.3e} at MM iteration {iteration}")]
    DescentViolation { iteration: usize, delta: f64 },

    #[error("no connected network after {attempts} placement attempts")]
    ConnectivityExhausted { attempts: usize },

    #[error("no Monte Carlo trials to aggregate")]
    EmptyTrialSet,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by bad input rather than by a solver failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidProblem(_)
                | Error::InvalidConfig(_)
                | Error::DimensionMismatch { .. }
                | Error::Json(_)
        )
    }
}
