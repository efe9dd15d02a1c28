use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NonSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("matrix order {n} is outside the supported range 2..={max}")]
    OrderOutOfRange { n: usize, max: usize },

    #[error("entry ({i}, {j}) is not a finite positive number")]
    NonPositiveEntry { i: usize, j: usize },

    #[error("entries ({i}, {j}) and ({j}, {i}) are not reciprocal (relative error {error:e})")]
    ReciprocityViolation { i: usize, j: usize, error: f64 },

    #[error("diagonal entry ({i}, {i}) is not 1")]
    DiagonalNotOne { i: usize },

    #[error("weight {index} is not a finite positive number")]
    NonPositiveWeight { index: usize },

    #[error("exponent must be finite and positive, got {0}")]
    NonPositiveExponent(f64),

    #[error("entry ({i}, {j}) = {value} is not on the extended Saaty scale")]
    NotOnScale { i: usize, j: usize, value: String },

    #[error("index out of range: ({i}, {j}) for order {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },

    #[error(
        "power iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NoConvergence {
        iterations: usize,
        residual: f64,
        best: Vec<f64>,
    },

    #[error("operation requires order at least {min}, got {n}")]
    OrderTooSmall { n: usize, min: usize },

    #[error("no random index available for order {n}")]
    MissingRi { n: usize },

    #[error("vectors have different lengths: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("vectors use different normalizations")]
    NormalizationMismatch,

    #[error("size mismatch: expected order {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{location}: {message}")]
    Parse { location: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
