use thiserror::Error;

use crate::expr::ParseError;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("invalid parameter for {family}: {reason}")]
    InvalidParameter { family: String, reason: String },

    #[error("budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("undecided: {0}")]
    Undecided(String),

    #[error("view mismatch: {0}")]
    ViewMismatch(String),

    #[error("ring element with negative coefficients has no graph representative")]
    NotAGraph,

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn budget(what: &'static str, limit: usize) -> Self {
        Error::BudgetExceeded { what, limit }
    }
}
