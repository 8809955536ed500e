use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("marking count n = {0} is too small (need n >= {1})")]
    InvalidN(usize, usize),
    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("expected {expected} coefficients for n = {n}, got {got}")]
    CoefficientCount {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("divisors live on different spaces (n = {0} vs n = {1})")]
    MismatchedN(usize, usize),
    #[error("invalid vital partition {0:?} (parts must be positive)")]
    InvalidPartition([usize; 4]),
    #[error("alpha = {alpha} outside the admissible range {range} for n = {n}")]
    AlphaOutOfRange {
        n: usize,
        alpha: Rational,
        range: &'static str,
    },
    #[error("k = {k} outside {min}..={max} for n = {n}")]
    KOutOfRange {
        n: usize,
        k: usize,
        min: usize,
        max: usize,
    },
    #[error("case 15 is empty when k < floor(n/2)")]
    EmptyCase,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("divisor is not F-nef; partition {witness} gives {value}")]
    NotFNef { witness: String, value: Rational },
    #[error("malformed rational {0:?} (expected p or p/q)")]
    ParseRational(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

pub type Result<T> = std::result::Result<T, Error>;
