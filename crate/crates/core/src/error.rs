use thiserror::Error;

use crate::exactnum::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument `{name}` must be at least {min}, got {value}")]
    OutOfRange {
        name: &'static str,
        min: i64,
        value: i64,
    },

    #[error("candidate divisor k = {k} exceeds n = {n}")]
    DivisorExceedsNumber { n: u64, k: u64 },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("series truncated at order {order} cannot supply the coefficient of x^{requested}")]
    InsufficientOrder { order: usize, requested: usize },

    #[error("normalized indicator evaluated to {value}, expected 0 or 1 (n = {n}, k = {k})")]
    NotNormalized { n: u64, k: u64, value: BigRational },

    #[error("invalid rational literal `{0}`")]
    ParseRational(String),

    #[error("matrix dimensions do not match: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid figure specification: {0}")]
    InvalidFigure(String),

    #[error("export failed: {0}")]
    Export(String),
}

pub type Result<T> = std::result::Result<T, Error>;
