//! Truncated integer series on box windows in ℤ^r.
//!
//! Each series carries its window, on which every stored coefficient is
//! exact, and a vanishing rule describing where it is known to be zero
//! outside the window. Operations that need coefficients outside the window
//! shrink the result window accordingly, so a series never holds a value
//! that was computed from missing data.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("window is empty after truncation")]
    EmptyWindow,
    #[error("exponent {0:?} lies outside the exact window")]
    OutsideWindow(Vec<i64>),
    #[error("arity mismatch: {0} vs {1}")]
    Arity(usize, usize),
    #[error("window too large ({0} coefficients)")]
    TooLarge(usize),
    #[error("factor exponent must be nonzero and nonnegative")]
    BadFactor,
    #[error(
        "window does not reach down to the vanishing bound needed for the geometric expansion"
    )]
    InsufficientWindow,
    #[error("nonzero coefficient at {0} beyond the polynomial bound")]
    NonPolynomialTail(i64),
}

/// Upper limit on stored coefficients per series.
pub const MAX_COEFFS: usize = 4_000_000;

/// The box `[lo, hi]` (inclusive) in ℤ^r.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Window {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        assert_eq!(lo.len(), hi.len(), "window bounds");
        Window { lo, hi }
    }

    pub fn cube(r: usize, lo: i64, hi: i64) -> Self {
        Window::new(vec![lo; r], vec![hi; r])
    }

    pub fn arity(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(a, b)| a > b)
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| (b - a + 1) as usize)
            .product()
    }

    pub fn contains(&self, mu: &[i64]) -> bool {
        mu.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(m, (a, b))| a <= m && m <= b)
    }

    pub fn intersect(&self, other: &Window) -> Window {
        Window::new(
            self.lo
                .iter()
                .zip(&other.lo)
                .map(|(a, b)| *a.max(b))
                .collect(),
            self.hi
                .iter()
                .zip(&other.hi)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        other.is_empty() || (self.contains(&other.lo) && self.contains(&other.hi))
    }

    fn index(&self, mu: &[i64]) -> usize {
        (0..self.arity()).fold(0usize, |idx, k| {
            let span = (self.hi[k] - self.lo[k] + 1) as usize;
            idx * span + (mu[k] - self.lo[k]) as usize
        })
    }

    /// Points in lexicographic order (so `μ − ν` precedes `μ` for `ν ≥ 0`).
    pub fn points(&self) -> WindowIter<'_> {
        WindowIter {
            w: self,
            cur: if self.is_empty() {
                None
            } else {
                Some(self.lo.clone())
            },
        }
    }
}

pub struct WindowIter<'a> {
    w: &'a Window,
    cur: Option<Vec<i64>>,
}

impl Iterator for WindowIter<'_> {
    type Item = Vec<i64>;
    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.cur.clone()?;
        let mut next = out.clone();
        let mut k = next.len();
        loop {
            if k == 0 {
                self.cur = None;
                break;
            }
            k -= 1;
            if next[k] < self.w.hi[k] {
                next[k] += 1;
                self.cur = Some(next);
                break;
            }
            next[k] = self.w.lo[k];
        }
        Some(out)
    }
}

/// Where a series is known to vanish outside its window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Vanishing {
    /// Nothing is known.
    Unknown,
    /// Zero whenever some `μ_i < floor_i` (orthant-supported series).
    AnyBelow(Vec<i64>),
    /// Zero whenever every `μ_i < c_i`.
    AllBelow(Vec<i64>),
}

impl Vanishing {
    fn is_zero_at(&self, mu: &[i64]) -> bool {
        match self {
            Vanishing::Unknown => false,
            Vanishing::AnyBelow(f) => mu.iter().zip(f).any(|(m, x)| m < x),
            Vanishing::AllBelow(c) => mu.iter().zip(c).all(|(m, x)| m < x),
        }
    }

    /// The weaker "all below" bound implied by this rule.
    fn all_below(&self) -> Option<&[i64]> {
        match self {
            Vanishing::Unknown => None,
            Vanishing::AnyBelow(f) | Vanishing::AllBelow(f) => Some(f),
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries {
    window: Window,
    vanishing: Vanishing,
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn from_fn(
        window: Window,
        vanishing: Vanishing,
        mut f: impl FnMut(&[i64]) -> BigInt,
    ) -> Self {
        let coeffs = window.points().map(|mu| f(&mu)).collect();
        TruncatedSeries {
            window,
            vanishing,
            coeffs,
        }
    }

    pub fn zero(window: Window) -> Self {
        let r = window.arity();
        let len = window.len();
        TruncatedSeries {
            window,
            vanishing: Vanishing::AnyBelow(vec![i64::MAX; r]),
            coeffs: vec![BigInt::zero(); len],
        }
    }

    /// The constant series `1`.
    pub fn one(window: Window) -> Self {
        let r = window.arity();
        TruncatedSeries::from_fn(window, Vanishing::AnyBelow(vec![0; r]), |mu| {
            if mu.iter().all(|&m| m == 0) {
                BigInt::from(1)
            } else {
                BigInt::zero()
            }
        })
    }

    /// A polynomial given by its terms; exact everywhere.
    pub fn from_terms(window: Window, terms: &[(Vec<i64>, BigInt)]) -> Self {
        let r = window.arity();
        let floor = (0..r)
            .map(|k| terms.iter().map(|(e, _)| e[k]).min().unwrap_or(0))
            .collect();
        let mut s =
            TruncatedSeries::from_fn(window, Vanishing::AnyBelow(floor), |_| BigInt::zero());
        for (e, c) in terms {
            if s.window.contains(e) {
                let i = s.window.index(e);
                s.coeffs[i] += c;
            }
        }
        s
    }

    pub fn arity(&self) -> usize {
        self.window.arity()
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn vanishing(&self) -> &Vanishing {
        &self.vanishing
    }

    /// Exact coefficient, zero where the vanishing rule applies.
    pub fn coefficient(&self, mu: &[i64]) -> Result<BigInt, SeriesError> {
        self.known(mu)
            .ok_or_else(|| SeriesError::OutsideWindow(mu.to_vec()))
    }

    fn known(&self, mu: &[i64]) -> Option<BigInt> {
        if self.window.contains(mu) {
            Some(self.coeffs[self.window.index(mu)].clone())
        } else if self.vanishing.is_zero_at(mu) {
            Some(BigInt::zero())
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<i64>, &BigInt)> {
        self.window.points().zip(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Restriction to a sub-window.
    pub fn restrict(&self, w: &Window) -> Result<Self, SeriesError> {
        let w = self.window.intersect(w);
        if w.is_empty() {
            return Err(SeriesError::EmptyWindow);
        }
        Ok(TruncatedSeries::from_fn(w, self.vanishing.clone(), |mu| {
            self.coeffs[self.window.index(mu)].clone()
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(
        &self,
        other: &Self,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<Self, SeriesError> {
        if self.arity() != other.arity() {
            return Err(SeriesError::Arity(self.arity(), other.arity()));
        }
        let w = self.window.intersect(&other.window);
        if w.is_empty() {
            return Err(SeriesError::EmptyWindow);
        }
        let van = match (&self.vanishing, &other.vanishing) {
            (Vanishing::AnyBelow(a), Vanishing::AnyBelow(b)) => {
                Vanishing::AnyBelow(a.iter().zip(b).map(|(x, y)| *x.min(y)).collect())
            }
            (a, b) => match (a.all_below(), b.all_below()) {
                (Some(a), Some(b)) => {
                    Vanishing::AllBelow(a.iter().zip(b).map(|(x, y)| *x.min(y)).collect())
                }
                _ => Vanishing::Unknown,
            },
        };
        Ok(TruncatedSeries::from_fn(w, van, |mu| {
            f(
                &self.coeffs[self.window.index(mu)],
                &other.coeffs[other.window.index(mu)],
            )
        }))
    }

    pub fn negate(&self) -> Self {
        TruncatedSeries {
            window: self.window.clone(),
            vanishing: self.vanishing.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplication by `(1 − t^ν)`: `c(μ) = S(μ) − S(μ−ν)`.
    ///
    /// The lower window corner moves up by `ν_i` in every coordinate except
    /// those where the series is orthant-supported and the window already
    /// reaches the support floor.
    pub fn mul_factor(&self, nu: &[i64]) -> Result<Self, SeriesError> {
        self.check_arity(nu.len())?;
        if nu.iter().any(|&x| x < 0) || nu.iter().all(|&x| x == 0) {
            return Err(SeriesError::BadFactor);
        }
        let lo: Vec<i64> = (0..self.arity())
            .map(|k| {
                let floor_ok =
                    matches!(&self.vanishing, Vanishing::AnyBelow(f) if self.window.lo[k] <= f[k]);
                if floor_ok {
                    self.window.lo[k]
                } else {
                    self.window.lo[k] + nu[k]
                }
            })
            .collect();
        let w = Window::new(lo, self.window.hi.clone());
        if w.is_empty() {
            return Err(SeriesError::EmptyWindow);
        }
        Ok(TruncatedSeries::from_fn(w, self.vanishing.clone(), |mu| {
            let shifted: Vec<i64> = mu.iter().zip(nu).map(|(m, v)| m - v).collect();
            self.known(mu).expect("in window") - self.known(&shifted).expect("guaranteed window")
        }))
    }

    /// Multiplication by `1/(1 − t^p) = Σ_m t^{mp}`: `X(μ) = S(μ) + X(μ−p)`.
    ///
    /// For an orthant-supported series the window must reach the support
    /// floor in every coordinate where `p` is positive. For a series that
    /// vanishes when all coordinates are small, `p` must be strictly
    /// positive and the window shrinks from below.
    pub fn div_factor(&self, p: &[i64]) -> Result<Self, SeriesError> {
        self.check_arity(p.len())?;
        if p.iter().any(|&x| x < 0) || p.iter().all(|&x| x == 0) {
            return Err(SeriesError::BadFactor);
        }
        let w = match &self.vanishing {
            Vanishing::AnyBelow(f) => {
                if (0..self.arity()).any(|k| p[k] > 0 && self.window.lo[k] > f[k]) {
                    return Err(SeriesError::InsufficientWindow);
                }
                self.window.clone()
            }
            Vanishing::AllBelow(c) => {
                if p.contains(&0) {
                    return Err(SeriesError::InsufficientWindow);
                }
                // Chains μ − m·p leave the window after m* steps; they must
                // be below c in every coordinate by then.
                let m_a = (0..self.arity())
                    .map(|k| (self.window.hi[k] - c[k]).div_euclid(p[k]) + 1)
                    .max()
                    .unwrap_or(0)
                    .max(0);
                let lo = (0..self.arity())
                    .map(|k| self.window.lo[k] + p[k] * (m_a - 1).max(0))
                    .collect();
                Window::new(lo, self.window.hi.clone())
            }
            Vanishing::Unknown => return Err(SeriesError::InsufficientWindow),
        };
        if w.is_empty() {
            return Err(SeriesError::EmptyWindow);
        }
        // Accumulate over the full source window (lexicographic order puts
        // μ − p before μ), then restrict.
        let src = &self.window;
        let mut acc: Vec<Option<BigInt>> = vec![None; src.len()];
        for (idx, mu) in src.points().enumerate() {
            let prev: Vec<i64> = mu.iter().zip(p).map(|(m, x)| m - x).collect();
            let tail = if src.contains(&prev) {
                acc[src.index(&prev)].clone()
            } else if self.vanishing.is_zero_at(&prev) {
                Some(BigInt::zero())
            } else {
                None
            };
            acc[idx] = tail.map(|t| t + &self.coeffs[idx]);
        }
        let mut bad = None;
        let out =
            TruncatedSeries::from_fn(w, self.vanishing.clone(), |mu| match &acc[src.index(mu)] {
                Some(v) => v.clone(),
                None => {
                    bad = Some(mu.to_vec());
                    BigInt::zero()
                }
            });
        match bad {
            Some(mu) => Err(SeriesError::OutsideWindow(mu)),
            None => Ok(out),
        }
    }

    fn check_arity(&self, r: usize) -> Result<(), SeriesError> {
        if r == self.arity() {
            Ok(())
        } else {
            Err(SeriesError::Arity(r, self.arity()))
        }
    }

    /// The one-variable series `l ↦ S(l, …, l)`.
    pub fn diagonal(&self) -> TruncatedSeries {
        let lo = *self.window.lo.iter().max().expect("arity ≥ 1");
        let hi = *self.window.hi.iter().min().expect("arity ≥ 1");
        let van = match &self.vanishing {
            Vanishing::Unknown => Vanishing::Unknown,
            Vanishing::AnyBelow(f) => Vanishing::AnyBelow(vec![*f.iter().max().expect("r ≥ 1")]),
            Vanishing::AllBelow(c) => Vanishing::AllBelow(vec![*c.iter().min().expect("r ≥ 1")]),
        };
        let r = self.arity();
        TruncatedSeries::from_fn(Window::new(vec![lo], vec![hi]), van, |l| {
            self.coeffs[self.window.index(&vec![l[0]; r])].clone()
        })
    }

    /// `Q(1)` for a one-variable series that is a polynomial of degree
    /// `< bound`: every coefficient from `bound` to the window end must be
    /// zero, and the window must start at the support floor.
    pub fn sum_of_coefficients(&self, bound: i64) -> Result<BigInt, SeriesError> {
        self.check_arity(1)?;
        let (lo, hi) = (self.window.lo[0], self.window.hi[0]);
        match &self.vanishing {
            Vanishing::AnyBelow(f) if lo <= f[0] => {}
            _ => return Err(SeriesError::InsufficientWindow),
        }
        if hi < bound {
            return Err(SeriesError::InsufficientWindow);
        }
        for l in bound.max(lo)..=hi {
            if !self.coeffs[self.window.index(&[l])].is_zero() {
                return Err(SeriesError::NonPolynomialTail(l));
            }
        }
        Ok(self.coeffs.iter().sum())
    }

    /// `(1 − t^{ν_1})⋯(1 − t^{ν_k}) · S`.
    pub fn mul_factors(&self, nus: &[Vec<i64>]) -> Result<Self, SeriesError> {
        nus.iter().try_fold(self.clone(), |s, nu| s.mul_factor(nu))
    }

    /// The first exponent where two series differ on their common window.
    pub fn first_difference(&self, other: &Self) -> Option<(Vec<i64>, BigInt, BigInt)> {
        let w = self.window.intersect(&other.window);
        w.points().find_map(|mu| {
            let a = self.coefficient(&mu).expect("common window");
            let b = other.coefficient(&mu).expect("common window");
            (a != b).then_some((mu, a, b))
        })
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TruncatedSeries(window {:?}..{:?}, ",
            self.window.lo, self.window.hi
        )?;
        let nz: Vec<String> = self
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mu, c)| format!("{mu:?}:{c}"))
            .collect();
        write!(f, "{{{}}})", nz.join(", "))
    }
}

/// Integers that fit `i64` serialize as numbers, larger ones as strings.
#[derive(Serialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

fn json_int(c: &BigInt) -> JsonInt {
    c.to_i64()
        .map_or_else(|| JsonInt::Big(c.to_string()), JsonInt::Small)
}

/// `serialize_with` helper for integer vectors, in the same number-or-string form.
pub fn serialize_ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(json_int))
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<(Vec<i64>, JsonInt)> = self
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mu, c)| (mu, json_int(c)))
            .collect();
        let mut st = s.serialize_struct("TruncatedSeries", 3)?;
        st.serialize_field("arity", &self.arity())?;
        st.serialize_field("window", &self.window)?;
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}

/// `P_O(t) = ∏_l 1/(1 − t^{p^l})` where `p^l = (p_{1l}, …, p_{rl})` is the
/// `l`-th column of the normal matrix.
pub fn ambient_poincare(
    columns: &[Vec<i64>],
    window: &Window,
) -> Result<TruncatedSeries, SeriesError> {
    let r = window.arity();
    if window.len() > MAX_COEFFS {
        return Err(SeriesError::TooLarge(window.len()));
    }
    let ext = Window::new(
        window.lo.iter().map(|&x| x.min(0)).collect(),
        window.hi.clone(),
    );
    let mut s = TruncatedSeries::one(ext);
    for col in columns {
        if col.len() != r {
            return Err(SeriesError::Arity(col.len(), r));
        }
        s = s.div_factor(col)?;
    }
    s.restrict(window)
}

/// `P(t) = (t_1−1)⋯(t_r−1)/(t_1⋯t_r − 1) · L(t)`, expanding
/// `1/(t_1⋯t_r − 1) = −Σ_m (t_1⋯t_r)^m`. For `r = 1` the multiplier is 1.
///
/// With `L` exact on `[lo, hi]^r` and zero once every `μ_j < 0`, the result
/// is exact on `[lo + hi + 1, hi]^r`; to obtain `P` on `[a, b]^r` supply
/// `L` on `[a − b − 1, b]^r`.
pub fn p_from_l(l: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let r = l.arity();
    if r == 1 {
        return Ok(l.clone());
    }
    let mut k = l.clone();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        k = k.mul_factor(&e)?.negate();
    }
    Ok(k.div_factor(&vec![1; r])?.negate())
}

/// Right inverse of [`p_from_l`] for orthant-supported `P`:
/// `L = (t_1⋯t_r − 1)·∏ 1/(t_i − 1) · P`.
pub fn l_from_p(p: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let r = p.arity();
    if r == 1 {
        return Ok(p.clone());
    }
    let mut s = p.clone();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        s = s.div_factor(&e)?.negate();
    }
    Ok(s.mul_factor(&vec![1; r])?.negate())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs_1d(s: &TruncatedSeries, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi)
            .map(|l| s.coefficient(&[l]).unwrap().to_i64().unwrap())
            .collect()
    }

    #[test]
    fn ambient_one_variable() {
        let s = ambient_poincare(&[vec![3], vec![2]], &Window::cube(1, 0, 12)).unwrap();
        assert_eq!(coeffs_1d(&s, 0, 6), vec![1, 0, 1, 1, 1, 1, 2]);
        let t = s.mul_factor(&[6]).unwrap();
        assert_eq!(
            coeffs_1d(&t, 0, 12),
            vec![1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]
        );
        let u = s.mul_factors(&[vec![3], vec![4]]).unwrap();
        assert_eq!(
            coeffs_1d(&u, 0, 12),
            vec![1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]
        );
        assert_eq!(u.sum_of_coefficients(4).unwrap(), BigInt::from(2));
    }

    #[test]
    fn ambient_two_index() {
        let s = ambient_poincare(&[vec![1, 2], vec![2, 1]], &Window::cube(2, 0, 6)).unwrap();
        assert_eq!(s.coefficient(&[3, 3]).unwrap(), BigInt::from(1));
        let d = s.diagonal();
        assert_eq!(coeffs_1d(&d, 0, 3), vec![1, 0, 0, 1]);
    }

    #[test]
    fn inverse_roundtrip() {
        let w = Window::cube(2, 0, 5);
        let p = ambient_poincare(&[vec![1, 2], vec![2, 1]], &w).unwrap();
        let l = l_from_p(&p).unwrap();
        assert_eq!(l.window(), &w);
        let back = p_from_l(&l).unwrap();
        assert!(back.agrees_with(&p));
    }

    #[test]
    fn polynomial_tail_is_detected() {
        let s = TruncatedSeries::from_terms(
            Window::cube(1, 0, 8),
            &[(vec![0], 1.into()), (vec![6], 1.into())],
        );
        assert_eq!(
            s.sum_of_coefficients(4),
            Err(SeriesError::NonPolynomialTail(6))
        );
        assert_eq!(s.sum_of_coefficients(7).unwrap(), BigInt::from(2));
    }

    #[test]
    fn json_shape() {
        let s = TruncatedSeries::from_terms(
            Window::cube(1, 0, 3),
            &[(vec![0], 1.into()), (vec![2], 1.into())],
        );
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["arity"], 1);
        assert_eq!(v["coefficients"], serde_json::json!([[[0], 1], [[2], 1]]));
    }
}
