use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("value {value} at position {position} is outside [1, {n}]")]
    OutOfRange { position: usize, value: i64, n: usize },

    #[error("color out of range at index {index}: {color} not in 1..={k}")]
    ColorOutOfRange { index: usize, color: i64, k: usize },

    #[error("length mismatch: n = {n} but {len} colors given")]
    LengthMismatch { n: usize, len: usize },

    #[error("malformed coloring JSON at line {line}, column {column}: {message}")]
    Malformed { line: usize, column: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("expected a coloring of the {expected} domain")]
    DomainMismatch { expected: &'static str },

    #[error("search space of {required} canonical colorings exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
