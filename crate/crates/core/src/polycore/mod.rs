//! Exact multivariate (Laurent) polynomials.

mod exponent;
mod parse;
mod polynomial;

pub use exponent::{dot, Exponent};
pub use parse::{parse_polynomial, ParseError, ParseErrorKind};
pub use polynomial::{default_var_names, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("exponent arithmetic overflows i64")]
    ExponentOverflow,
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),
    #[error("variable index {0} out of range")]
    VarIndex(usize),
}
