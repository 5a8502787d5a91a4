use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Input text does not conform to the expression grammar.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A quotient in Z[v^{1/2}, v^{-1/2}] left a remainder.
    #[error("non-divisible: remainder {remainder}")]
    NonDivisible { remainder: String },

    /// Request exceeds the certified degree/rank range of a presentation.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Invalid argument (illegal Cartan type, bad variant, mixed input, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A triangular system had no solution at the named index.
    #[error("no solution in triangular solve at index {index}: {msg}")]
    NoSolution { index: String, msg: String },

    /// An internal consistency assertion failed (signals a convention bug).
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
