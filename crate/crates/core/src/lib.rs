//! Newton polyhedra, multi-index Newton filtrations and their Poincaré
//! series, computed exactly and cross-checked against finite-dimensional
//! quotient-ring oracles.
//!
//! The algebraic layer is generic over an exact [`Scalar`] field. The
//! aliases below fix the default: arbitrary-precision rationals for
//! coefficients and arbitrary-precision integers for series.

pub mod fan;
pub mod lattice;
pub mod linalg;
pub mod newton;
pub mod polycore;
pub mod scalar;
pub mod series;

pub mod artin;
pub mod formula;
pub mod hypotheses;
pub mod toric;

pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
pub type Integer = num_bigint::BigInt;
pub type Poly = polycore::Polynomial<Rational>;
pub type Series = series::TruncatedSeries;
