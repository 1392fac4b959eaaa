//! Exact coefficient fields.
//!
//! Polynomials, subspaces and Gröbner bases are generic over [`Scalar`].
//! Every implementation must be an exact field: all comparisons in this
//! crate are equalities, never tolerances.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// An exact field usable as a polynomial coefficient.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Signed + Send + Sync + 'static
{
    /// Exact conversion from a fraction of big integers, `None` if the value
    /// is not representable.
    fn from_ratio(numer: &BigInt, denom: &BigInt) -> Option<Self>;

    /// The value as an arbitrary-precision rational.
    fn to_big_rational(&self) -> BigRational;

    fn from_i64(v: i64) -> Self {
        Self::from_ratio(&BigInt::from(v), &BigInt::one())
            .expect("small integers are representable")
    }
}

impl Scalar for BigRational {
    fn from_ratio(numer: &BigInt, denom: &BigInt) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        Some(BigRational::new(numer.clone(), denom.clone()))
    }

    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }
}

impl Scalar for Rational64 {
    fn from_ratio(numer: &BigInt, denom: &BigInt) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        let r = BigRational::new(numer.clone(), denom.clone());
        Some(Rational64::new(r.numer().to_i64()?, r.denom().to_i64()?))
    }

    fn to_big_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}
