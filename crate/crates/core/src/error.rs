use thiserror::Error;

/// Errors raised while building codes or processing words.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field width {0} out of range (expected 2..=16)")]
    FieldWidth(u32),
    #[error("{what} {value} out of range [0, {bound})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        bound: u64,
    },
    #[error("length mismatch: expected {expected}, got {actual}")]
    Length { expected: usize, actual: usize },
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("inner generator: {0}")]
    Generator(String),
    #[error("Reed-Solomon decoding failed")]
    DecodeFailure,
    #[error("row-index header decoded out of range")]
    HeaderFailure,
    #[error("infeasible preset: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
