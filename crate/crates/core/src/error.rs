use std::time::Duration;

use thiserror::Error;

use crate::structure::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate equation id `{id}` at line {line}")]
    DuplicateEquation { id: String, line: usize },

    #[error("equation `{id}` has no variables")]
    EmptyEquation { id: String },

    #[error("structure has no equations")]
    EmptyStructure,

    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),

    #[error("invalid JSON structure: {0}")]
    Json(#[from] serde_json::Error),

    #[error("equation `{0}` is not part of the structure")]
    UnknownEquation(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("eliminating variables empties equation `{0}`")]
    EliminationEmptiesEquation(String),

    #[error("{0}")]
    NotComplete(ValidationReport),

    #[error("inconsistent causal mapping: {0}")]
    InconsistentMapping(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "instance has {size} equations, above the brute-force limit of {limit} \
         (use --force-exponential or CAUSORD_MAX_BRUTEFORCE)"
    )]
    GuardExceeded { size: usize, limit: usize },

    #[error("timed out after {0:?}")]
    Timeout(Duration),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that describe the input's domain (incompleteness,
    /// guard, timeout) rather than malformed input or I/O.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::NotComplete(_)
                | Error::GuardExceeded { .. }
                | Error::Timeout(_)
                | Error::InvalidArgument(_)
                | Error::EliminationEmptiesEquation(_)
                | Error::UnknownEquation(_)
                | Error::InconsistentMapping(_)
        )
    }
}
