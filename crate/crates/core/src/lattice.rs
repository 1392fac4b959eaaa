//! Direct lattice-point counts for monomial filtrations of `O = ℂ{z}`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::polycore::{dot, Exponent, Polynomial};
use crate::scalar::Scalar;
use crate::series::{SeriesError, TruncatedSeries, Vanishing, Window};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("weight vector {0:?} has a non-positive component; graded pieces are infinite")]
    NotPositive(Vec<i64>),
    #[error("psi is not integral at {0:?}; M is too small")]
    PsiNotIntegral(Vec<i64>),
    #[error("polynomial has negative exponents")]
    NotGerm,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// All `q ∈ ℕⁿ` with `⟨w_j, q⟩ ≤ b_j` for at least one `j`.
///
/// Weights must be strictly positive, which makes the set finite; the
/// search prunes a branch once every inequality is violated.
pub fn enumerate_exists_le(weights: &[Vec<i64>], bounds: &[i64], n: usize) -> Vec<Exponent> {
    let mut out = Vec::new();
    if bounds.iter().all(|&b| b < 0) {
        return out;
    }
    let mut q = vec![0i64; n];
    let mut vals = vec![0i64; weights.len()];
    dfs(weights, bounds, 0, &mut q, &mut vals, &mut out);
    out
}

fn dfs(
    w: &[Vec<i64>],
    b: &[i64],
    i: usize,
    q: &mut Vec<i64>,
    vals: &mut Vec<i64>,
    out: &mut Vec<Exponent>,
) {
    if i == q.len() {
        out.push(Exponent::new(q.clone()));
        return;
    }
    loop {
        dfs(w, b, i + 1, q, vals, out);
        for (j, wj) in w.iter().enumerate() {
            vals[j] += wj[i];
        }
        q[i] += 1;
        if vals.iter().zip(b).all(|(v, bj)| v > bj) {
            break;
        }
    }
    for (j, wj) in w.iter().enumerate() {
        vals[j] -= wj[i] * q[i];
    }
    q[i] = 0;
}

/// A monomial filtration: `z^q ∈ F_μ ⇔ val(q) ≥ μ` componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Filtration {
    /// `val(q) = (⟨p_1,q⟩, …, ⟨p_r,q⟩)`.
    Multi { normals: Vec<Vec<i64>> },
    /// `val(q) = ψ(q) = M · min_j ⟨p_j,q⟩/ν_j`.
    OneIndex {
        normals: Vec<Vec<i64>>,
        offsets: Vec<i64>,
        m: i64,
    },
}

impl Filtration {
    pub fn multi(normals: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        check_positive(&normals)?;
        Ok(Filtration::Multi { normals })
    }

    pub fn one_index(
        normals: Vec<Vec<i64>>,
        offsets: Vec<i64>,
        m: i64,
    ) -> Result<Self, LatticeError> {
        check_positive(&normals)?;
        Ok(Filtration::OneIndex {
            normals,
            offsets,
            m,
        })
    }

    /// The `𝔪`-adic (total degree) filtration.
    pub fn degree(n: usize) -> Self {
        Filtration::Multi {
            normals: vec![vec![1; n]],
        }
    }

    pub fn nvars(&self) -> usize {
        self.normals()[0].len()
    }

    pub fn normals(&self) -> &[Vec<i64>] {
        match self {
            Filtration::Multi { normals } | Filtration::OneIndex { normals, .. } => normals,
        }
    }

    /// Length of the filtration index `μ`.
    pub fn arity(&self) -> usize {
        match self {
            Filtration::Multi { normals } => normals.len(),
            Filtration::OneIndex { .. } => 1,
        }
    }

    pub fn valuation(&self, q: &Exponent) -> Vec<i64> {
        match self {
            Filtration::Multi { normals } => normals.iter().map(|p| q.pairing(p)).collect(),
            Filtration::OneIndex { .. } => vec![self.psi(q).expect("psi integral")],
        }
    }

    /// `ψ(q)`; only for the one-index filtration.
    pub fn psi(&self, q: &Exponent) -> Result<i64, LatticeError> {
        let Filtration::OneIndex {
            normals,
            offsets,
            m,
        } = self
        else {
            panic!("psi is defined for the one-index filtration");
        };
        let v = normals
            .iter()
            .zip(offsets)
            .map(|(p, &nu)| Rational::new(BigInt::from(*m) * BigInt::from(q.pairing(p)), nu.into()))
            .min()
            .expect("r ≥ 1");
        if !v.is_integer() {
            return Err(LatticeError::PsiNotIntegral(q.as_slice().to_vec()));
        }
        Ok(i64::try_from(v.to_integer()).expect("psi fits i64"))
    }

    pub fn contains(&self, q: &Exponent, mu: &[i64]) -> bool {
        self.valuation(q).iter().zip(mu).all(|(v, m)| v >= m)
    }

    /// Monomials outside `F_{μ+𝟙}`, i.e. `val_j(q) ≤ μ_j` for some `j`.
    pub fn below(&self, mu: &[i64]) -> Vec<Exponent> {
        let n = self.nvars();
        match self {
            Filtration::Multi { normals } => enumerate_exists_le(normals, mu, n),
            Filtration::OneIndex {
                normals,
                offsets,
                m,
            } => {
                // ψ(q) ≤ l  ⇔  ∃j  M⟨p_j,q⟩ ≤ l ν_j.
                let w: Vec<Vec<i64>> = normals
                    .iter()
                    .map(|p| p.iter().map(|x| x * m).collect())
                    .collect();
                let b: Vec<i64> = offsets.iter().map(|nu| mu[0] * nu).collect();
                enumerate_exists_le(&w, &b, n)
            }
        }
    }

    /// The order of a germ: componentwise minimum of `val` over its support
    /// (the ν-row for the multi-index filtration, ρ for the one-index one).
    pub fn order<C: Scalar>(&self, g: &Polynomial<C>) -> Option<Vec<i64>> {
        let mut acc: Option<Vec<i64>> = None;
        for q in g.support() {
            let v = self.valuation(q);
            acc = Some(match acc {
                None => v,
                Some(a) => a.iter().zip(&v).map(|(x, y)| *x.min(y)).collect(),
            });
        }
        acc
    }

    /// `dim F_μ/F_{μ+𝟙}`: monomials with `val ≥ μ` and `val_j = μ_j` for
    /// some `j`.
    pub fn graded_dim(&self, mu: &[i64]) -> usize {
        self.below(mu)
            .iter()
            .filter(|q| self.contains(q, mu))
            .count()
    }
}

fn check_positive(normals: &[Vec<i64>]) -> Result<(), LatticeError> {
    match normals.iter().find(|p| p.iter().any(|&x| x <= 0)) {
        Some(p) => Err(LatticeError::NotPositive(p.clone())),
        None => Ok(()),
    }
}

/// `dim F_μ/F_{μ+𝟙}` for the multi-index Newton filtration.
pub fn dim_graded_ambient(normals: &[Vec<i64>], mu: &[i64]) -> Result<usize, LatticeError> {
    Ok(Filtration::multi(normals.to_vec())?.graded_dim(mu))
}

/// `L(t) = Σ dim F_μ/F_{μ+𝟙} t^μ` on a window. `L(μ) = 0` once every
/// `μ_j < 0`.
pub fn l_direct(filt: &Filtration, window: &Window) -> TruncatedSeries {
    TruncatedSeries::from_fn(
        window.clone(),
        Vanishing::AllBelow(vec![0; window.arity()]),
        |mu| BigInt::from(filt.graded_dim(mu)),
    )
}

/// `#{q : ψ(q) = l}`.
pub fn dim_one_index(filt: &Filtration, l: i64) -> usize {
    filt.graded_dim(&[l])
}

/// `P̂(τ) = Σ #{ψ = l} τ^l`.
pub fn p_hat_direct(filt: &Filtration, lo: i64, hi: i64) -> TruncatedSeries {
    TruncatedSeries::from_fn(
        Window::new(vec![lo], vec![hi]),
        Vanishing::AnyBelow(vec![0]),
        |l| BigInt::from(dim_one_index(filt, l[0])),
    )
}

/// `#(M_l ∖ M_{l+1}) = #{q : min_j ⟨p_j,q⟩ = l}`.
pub fn m_l_count(normals: &[Vec<i64>], l: i64) -> usize {
    let n = normals[0].len();
    enumerate_exists_le(normals, &vec![l; normals.len()], n)
        .iter()
        .filter(|q| normals.iter().map(|p| dot(p, q.as_slice())).min() == Some(l))
        .count()
}

/// The three one-variable series compared around the one-index Poincaré
/// series, and which pairs agree on the window.
#[derive(Debug, Clone, Serialize)]
pub struct OneIndexReport {
    pub window: (i64, i64),
    /// `P̂` from ψ-level counts.
    #[serde(serialize_with = "crate::series::serialize_ints")]
    pub p_hat: Vec<BigInt>,
    /// `Σ #(M_l ∖ M_{l+1}) τ^l`.
    #[serde(serialize_with = "crate::series::serialize_ints")]
    pub m_counts: Vec<BigInt>,
    /// Diagonal coefficients `P_l` of the ambient multi-index series.
    #[serde(serialize_with = "crate::series::serialize_ints")]
    pub diagonal: Vec<BigInt>,
    pub p_hat_eq_m_counts: bool,
    pub p_hat_eq_diagonal: bool,
    pub m_counts_eq_diagonal: bool,
    pub first_diagonal_discrepancy: Option<i64>,
}

pub fn one_index_report(
    normals: &[Vec<i64>],
    offsets: &[i64],
    m: i64,
    lo: i64,
    hi: i64,
) -> Result<OneIndexReport, LatticeError> {
    let filt = Filtration::one_index(normals.to_vec(), offsets.to_vec(), m)?;
    let p_hat: Vec<BigInt> = (lo..=hi)
        .map(|l| BigInt::from(dim_one_index(&filt, l)))
        .collect();
    let m_counts: Vec<BigInt> = (lo..=hi)
        .map(|l| BigInt::from(m_l_count(normals, l)))
        .collect();
    let r = normals.len();
    let n = normals[0].len();
    let columns: Vec<Vec<i64>> = (0..n)
        .map(|i| normals.iter().map(|p| p[i]).collect())
        .collect();
    let amb =
        crate::series::ambient_poincare(&columns, &Window::new(vec![lo.min(0); r], vec![hi; r]))?;
    let diag = amb.diagonal();
    let diagonal: Vec<BigInt> = (lo..=hi)
        .map(|l| diag.coefficient(&[l]).expect("on window"))
        .collect();
    let first = (lo..=hi)
        .zip(p_hat.iter().zip(&diagonal))
        .find(|(_, (a, b))| a != b)
        .map(|(l, _)| l);
    Ok(OneIndexReport {
        window: (lo, hi),
        p_hat_eq_m_counts: p_hat == m_counts,
        p_hat_eq_diagonal: p_hat == diagonal,
        m_counts_eq_diagonal: m_counts == diagonal,
        first_diagonal_discrepancy: first,
        p_hat,
        m_counts,
        diagonal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_dims() {
        assert_eq!(dim_graded_ambient(&[vec![3, 2]], &[6]).unwrap(), 2);
        assert_eq!(dim_graded_ambient(&[vec![3, 2]], &[1]).unwrap(), 0);
        assert_eq!(
            dim_graded_ambient(&[vec![1, 2], vec![2, 1]], &[1, 1]).unwrap(),
            2
        );
        assert!(dim_graded_ambient(&[vec![0, 1]], &[1]).is_err());
    }

    #[test]
    fn psi_values() {
        let f = Filtration::one_index(vec![vec![3, 2]], vec![6], 6).unwrap();
        assert_eq!(f.psi(&Exponent::new(vec![1, 1])).unwrap(), 5);
        assert_eq!(f.psi(&Exponent::new(vec![0, 0])).unwrap(), 0);
        let g = Filtration::one_index(vec![vec![1, 2], vec![2, 1]], vec![3, 3], 3).unwrap();
        assert_eq!(dim_one_index(&g, 1), 2);
        let bad = Filtration::one_index(vec![vec![3, 2]], vec![6], 1).unwrap();
        assert!(bad.psi(&Exponent::new(vec![1, 0])).is_err());
    }

    #[test]
    fn m_counts() {
        let p = [vec![1, 2], vec![2, 1]];
        assert_eq!(m_l_count(&p, 0), 1);
        assert_eq!(m_l_count(&p, 1), 2);
        assert_eq!(m_l_count(&p, 3), 3);
    }

    #[test]
    fn enumeration_matches_box_scan() {
        let w = vec![vec![1, 2], vec![3, 1]];
        let b = vec![5, 4];
        let got = enumerate_exists_le(&w, &b, 2);
        let mut want = Vec::new();
        for a in 0..=10 {
            for c in 0..=10 {
                if a + 2 * c <= 5 || 3 * a + c <= 4 {
                    want.push(Exponent::new(vec![a, c]));
                }
            }
        }
        let mut got_sorted = got.clone();
        got_sorted.sort();
        want.sort();
        assert_eq!(got_sorted, want);
    }
}
