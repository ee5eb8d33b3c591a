//! Exact sparse multivariate polynomials, exponent vectors and their text
//! syntax.

mod exponent;
mod parse;
mod polynomial;

pub use exponent::{format_monomial, ExponentVector, MAX_EXPONENT};
pub use parse::{parse_polynomial, parse_rational};
pub use polynomial::Polynomial;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("non-integer exponent at position {pos}")]
    NonIntegerExponent { pos: usize },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("exponent exceeds 2^31")]
    ExponentOverflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}
