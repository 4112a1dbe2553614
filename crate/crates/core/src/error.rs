use thiserror::Error;

/// Errors raised by the library. Mathematical "don't know" outcomes are
/// values (see [`crate::sod::Status`]), never errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("length mismatch: expected {expected} entries, got {got}")]
    Length { expected: usize, got: usize },
    #[error("assumption violated: {0}")]
    Assumption(String),
    #[error("degenerate moduli problem: {0}")]
    Degenerate(String),
    #[error("presentation error: {0}")]
    Presentation(String),
    #[error("non-integral Euler characteristic {0}")]
    NonIntegral(String),
    #[error("bundle expression: {0}")]
    Expression(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
