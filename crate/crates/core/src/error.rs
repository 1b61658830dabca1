use thiserror::Error;

use crate::tree::{Address, TreeParams};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed text input. Line and column are 1-based.
    #[error("line {line}, column {column}: {message}")]
    Format {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parameter mismatch: {0} vs {1}")]
    ParamMismatch(TreeParams, TreeParams),
    #[error("needs refinement: address '{0}' is not below a domain leaf")]
    NeedsRefinement(Address),
    #[error("element is not elliptic")]
    NotElliptic,
    #[error("element is not hyperbolic")]
    NotHyperbolic,
    #[error("diagram is not reduced: {0}")]
    NotReduced(String),
    #[error("cutting class is not admissible: {0}")]
    Inadmissible(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn format(column: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Moves a single-line format error onto `line`, shifting its column by `offset`.
    pub(crate) fn at_line(self, line: usize, offset: usize) -> Self {
        match self {
            Error::Format {
                column, message, ..
            } => Error::Format {
                line,
                column: column + offset,
                message,
            },
            other => other,
        }
    }

    /// True for errors caused by the caller's input rather than a broken invariant.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
