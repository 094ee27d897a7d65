use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("quadratic form is not positive definite")]
    NotPositiveDefinite,
    #[error("precision exhausted: {0}; retry with a larger --precision or explicit automorphism hints")]
    Precision(String),
    #[error("wild case unsupported: p = {p} divides |H| = {order}")]
    WildCase { p: u64, order: usize },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("search budget of {0} candidates exhausted")]
    Budget(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
