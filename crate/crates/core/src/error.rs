use thiserror::Error;

use crate::linalg::Algebra;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("not a rational number: {0:?}")]
    BadRational(String),

    #[error("forest {0} has a bare single-vertex component, which is not an element of H")]
    NotInH(String),

    #[error("{operation} is not available for {algebra}")]
    Unsupported { operation: &'static str, algebra: Algebra },

    #[error("missing value for tree {0}")]
    MissingTreeValue(String),

    #[error("grading mismatch: {0}")]
    GradingMismatch(String),

    #[error("degree {needed} required but functional is truncated at {available}")]
    InsufficientDegree { needed: usize, available: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal mismatch: {0}")]
    Mismatch(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
