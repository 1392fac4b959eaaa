//! Closed-form Poincaré series assembled from Newton data.

use num_bigint::BigInt;
use serde::Serialize;

use crate::fan::{compute_m, compute_m_minimal};
use crate::lattice::{p_hat_direct, Filtration, LatticeError};
use crate::newton::{nu_matrix, NewtonError, NewtonPolyhedron};
use crate::polycore::{PolyError, Polynomial};
use crate::scalar::Scalar;
use crate::series::{ambient_poincare, SeriesError, TruncatedSeries, Window};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("partial derivative {0} vanishes")]
    ZeroPartial(usize),
}

/// Newton data of a product `g_1⋯g_k`.
#[derive(Debug, Clone, Serialize)]
pub struct NewtonData {
    pub normals: Vec<Vec<i64>>,
    pub offsets: Vec<i64>,
    /// One row `ν_i = (ν_{i1}, …, ν_{ir})` per generator.
    pub nus: Vec<Vec<i64>>,
}

impl NewtonData {
    pub fn new<C: Scalar>(gs: &[Polynomial<C>]) -> Result<Self, FormulaError> {
        let d = NewtonPolyhedron::of_product(gs)?;
        Ok(NewtonData {
            normals: d.normals(),
            offsets: d.offsets(),
            nus: nu_matrix(gs, d.facets())?,
        })
    }

    /// Columns `p^l = (p_{1l}, …, p_{rl})`.
    pub fn columns(&self) -> Vec<Vec<i64>> {
        let n = self.normals.first().map_or(0, Vec::len);
        (0..n)
            .map(|l| self.normals.iter().map(|p| p[l]).collect())
            .collect()
    }
}

/// `P_O(t)` on a window, expanded from the coordinate orthant so that the
/// window is exact even when it starts above zero.
pub fn ambient_series(data: &NewtonData, window: &Window) -> Result<TruncatedSeries, SeriesError> {
    let ext = Window::new(
        window.lo.iter().map(|&x| x.min(0)).collect(),
        window.hi.clone(),
    );
    ambient_poincare(&data.columns(), &ext)?.restrict(window)
}

/// `∏_i (1 − t^{ν_i}) · P_O(t)`.
pub fn ci_series(data: &NewtonData, window: &Window) -> Result<TruncatedSeries, SeriesError> {
    let ext = Window::new(
        window.lo.iter().map(|&x| x.min(0)).collect(),
        window.hi.clone(),
    );
    ambient_poincare(&data.columns(), &ext)?
        .mul_factors(&data.nus)?
        .restrict(window)
}

/// The one-index series of a complete intersection given by the partial
/// derivatives of `f`.
#[derive(Debug, Clone, Serialize)]
pub struct OneIndexSeries {
    pub m: i64,
    /// `ρ_i`, the ψ-order of `∂f/∂z_i`.
    pub rho: Vec<i64>,
    pub p_hat: TruncatedSeries,
    /// `Q̂ = ∏(1 − τ^{ρ_i}) · P̂`.
    pub q_hat: TruncatedSeries,
}

impl OneIndexSeries {
    /// `Q̂(1)`, defined when `Q̂` vanishes from degree `Σρ_i` on.
    pub fn value_at_one(&self) -> Result<BigInt, SeriesError> {
        self.q_hat.sum_of_coefficients(self.rho.iter().sum())
    }
}

pub fn one_index_partials<C: Scalar>(
    f: &Polynomial<C>,
    minimal_m: bool,
    lo: i64,
    hi: i64,
) -> Result<OneIndexSeries, FormulaError> {
    let d = NewtonPolyhedron::of_product(std::slice::from_ref(f))?;
    let (normals, offsets) = (d.normals(), d.offsets());
    let m = if minimal_m {
        compute_m_minimal(&normals, &offsets)
    } else {
        compute_m(&offsets)
    };
    let filt = Filtration::one_index(normals, offsets, m)?;
    let rho = (0..f.nvars())
        .map(|i| {
            let g = f.partial_derivative(i)?;
            filt.order(&g)
                .map(|v| v[0])
                .ok_or(FormulaError::ZeroPartial(i))
        })
        .collect::<Result<Vec<i64>, FormulaError>>()?;
    let full = p_hat_direct(&filt, lo.min(0), hi);
    let q_full = rho
        .iter()
        .try_fold(full.clone(), |s, &r| s.mul_factor(&[r]))?;
    let w = Window::new(vec![lo], vec![hi]);
    Ok(OneIndexSeries {
        m,
        rho,
        p_hat: full.restrict(&w)?,
        q_hat: q_full.restrict(&w)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_polynomial;
    use crate::Poly;

    fn poly(s: &str) -> Poly {
        parse_polynomial(s, &["z1", "z2"]).unwrap()
    }

    fn coeffs(s: &TruncatedSeries, lo: i64, hi: i64) -> Vec<BigInt> {
        (lo..=hi).map(|l| s.coefficient(&[l]).unwrap()).collect()
    }

    #[test]
    fn cusp_ci_series() {
        let data = NewtonData::new(&[poly("z1^2 + z2^3")]).unwrap();
        assert_eq!(data.nus, vec![vec![6]]);
        let s = ci_series(&data, &Window::cube(1, 0, 12)).unwrap();
        let want: Vec<BigInt> = [1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]
            .map(BigInt::from)
            .to_vec();
        assert_eq!(coeffs(&s, 0, 12), want);
        let a = ambient_series(&data, &Window::cube(1, 3, 7)).unwrap();
        assert_eq!(coeffs(&a, 3, 7), [1, 1, 1, 2, 1].map(BigInt::from).to_vec());
    }

    #[test]
    fn partials_q_hat() {
        let s = one_index_partials(&poly("z1^2 + z2^3"), false, 0, 20).unwrap();
        assert_eq!((s.m, s.rho.clone()), (6, vec![3, 4]));
        assert_eq!(s.value_at_one().unwrap(), BigInt::from(2));
        let s = one_index_partials(&poly("z1^3 + z2^4"), false, 0, 40).unwrap();
        assert_eq!(s.value_at_one().unwrap(), BigInt::from(6));
        let s = one_index_partials(&poly("z1^3 + z1*z2 + z2^3"), false, 0, 20).unwrap();
        assert!(matches!(
            s.value_at_one(),
            Err(SeriesError::NonPolynomialTail(_))
        ));
    }
}
