use thiserror::Error;

/// Errors shared by all modules of this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An exact integer computation would leave the representable range.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A one-factorization of the complete u-uniform hypergraph on m
    /// vertices exists only when u divides m.
    #[error("block size {u} does not divide vertex count {m}")]
    Divisibility { m: u32, u: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The backtracking oracle exhausted its step budget without an answer.
    /// This is a declared give-up, never a wrong result.
    #[error("exact-cover search gave up after {steps} steps")]
    OracleTimeout { steps: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
