use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::PolyError;

/// A lattice point `q ∈ ℤⁿ`, the exponent of the monomial `z^q`.
///
/// Ordering is graded: total degree first, then lexicographically
/// *descending*, so that `z1^2 < z1*z2 < z2^2`. This is the canonical
/// printing order of [`super::Polynomial`].
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(Vec<i64>);

impl Exponent {
    pub fn new(entries: Vec<i64>) -> Self {
        Exponent(entries)
    }

    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Exponent(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn le_componentwise(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &Exponent) -> Result<Exponent, PolyError> {
        if self.len() != other.len() {
            return Err(PolyError::VarCountMismatch(self.len(), other.len()));
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Exponent)
    }

    pub fn checked_sub(&self, other: &Exponent) -> Result<Exponent, PolyError> {
        if self.len() != other.len() {
            return Err(PolyError::VarCountMismatch(self.len(), other.len()));
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Exponent)
    }

    /// `⟨w, q⟩`.
    pub fn pairing(&self, w: &[i64]) -> i64 {
        dot(w, &self.0)
    }
}

/// Integer dot product; panics on `i64` overflow rather than wrapping.
pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    let s: i128 = a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
    i64::try_from(s).expect("lattice pairing overflows i64")
}

impl From<Vec<i64>> for Exponent {
    fn from(v: Vec<i64>) -> Self {
        Exponent(v)
    }
}

impl From<&[i64]> for Exponent {
    fn from(v: &[i64]) -> Self {
        Exponent(v.to_vec())
    }
}

impl std::ops::Index<usize> for Exponent {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order_puts_first_variable_first() {
        let mut v = [
            Exponent::new(vec![0, 2]),
            Exponent::new(vec![1, 1]),
            Exponent::new(vec![2, 0]),
            Exponent::new(vec![0, 1]),
        ];
        v.sort();
        let got: Vec<_> = v.iter().map(|e| e.as_slice().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn addition_reports_overflow() {
        let a = Exponent::new(vec![i64::MAX, 0]);
        let b = Exponent::new(vec![1, 0]);
        assert!(matches!(
            a.checked_add(&b),
            Err(PolyError::ExponentOverflow)
        ));
    }
}
