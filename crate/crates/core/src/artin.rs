//! Finite-dimensional quotients `A = O/F_{μ+𝟙}` and exact graded dimensions
//! of filtrations induced on `O/(g_1, …, g_k)`.
//!
//! Everything here is row reduction over explicit monomial bases; no
//! standard bases are needed because `F_{μ+𝟙}` is a monomial ideal of
//! finite codimension.

use std::collections::HashMap;

use serde::Serialize;

use crate::lattice::{Filtration, LatticeError};
pub use crate::linalg::{SparseVec, Subspace};
use crate::polycore::{Exponent, Polynomial};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArtinError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("polynomial has negative exponents")]
    NotGerm,
    #[error("quotient dimension did not stabilize up to depth {0}; dimension possibly infinite")]
    PossiblyInfinite(i64),
    #[error("expected {0} generators, got {1}")]
    GeneratorCount(usize, usize),
}

/// `O/F_{μ+𝟙}` with its monomial basis `{q : ∃j val_j(q) ≤ μ_j}`.
#[derive(Debug, Clone)]
pub struct ArtinianQuotient {
    filt: Filtration,
    mu: Vec<i64>,
    basis: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl ArtinianQuotient {
    pub fn new(filt: &Filtration, mu: &[i64]) -> Self {
        let mut basis = filt.below(mu);
        basis.sort();
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, q)| (q.clone(), i))
            .collect();
        ArtinianQuotient {
            filt: filt.clone(),
            mu: mu.to_vec(),
            basis,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Exponent] {
        &self.basis
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    /// The class of a germ: terms outside the basis lie in `F_{μ+𝟙}`.
    pub fn project<C: Scalar>(&self, p: &Polynomial<C>) -> SparseVec<C> {
        p.terms()
            .filter_map(|(q, c)| self.index.get(q).map(|&i| (i, c.clone())))
            .collect()
    }

    /// Span of the classes of `z^a·g` over basis monomials `z^a` with
    /// `val(a) ≥ floor` (no restriction when `floor` is `None`). Multiples by
    /// monomials outside the basis vanish in `A`.
    fn multiples<C: Scalar>(
        &self,
        g: &Polynomial<C>,
        floor: Option<&[i64]>,
        into: &mut Subspace<C>,
    ) {
        for a in &self.basis {
            if let Some(f) = floor {
                if !self.filt.contains(a, f) {
                    continue;
                }
            }
            let shifted = g.shift(a).expect("exponent overflow");
            into.insert(self.project(&shifted));
        }
    }

    /// Image of the ideal `(g_1, …, g_k)` in `A`.
    pub fn ideal_image<C: Scalar>(&self, gs: &[Polynomial<C>]) -> Subspace<C> {
        let mut s = Subspace::new(self.dim());
        for g in gs {
            self.multiples(g, None, &mut s);
        }
        s
    }

    /// Image of `F_λ` in `A`: the basis monomials with `val ≥ λ`.
    pub fn filtration_image<C: Scalar>(&self, lambda: &[i64]) -> Subspace<C> {
        Subspace::coordinate(
            self.dim(),
            self.basis
                .iter()
                .enumerate()
                .filter(|(_, q)| self.filt.contains(q, lambda))
                .map(|(i, _)| i),
        )
    }
}

fn check_germs<C: Scalar>(gs: &[Polynomial<C>]) -> Result<(), ArtinError> {
    if gs.iter().all(Polynomial::is_germ) {
        Ok(())
    } else {
        Err(ArtinError::NotGerm)
    }
}

/// `dim F_μO_Y / F_{μ+𝟙}O_Y = dim(W + I_A) − dim I_A` with `W` the image of
/// `F_μ` in `A = O/F_{μ+𝟙}`.
pub fn induced_dim<C: Scalar>(
    filt: &Filtration,
    mu: &[i64],
    gs: &[Polynomial<C>],
) -> Result<usize, ArtinError> {
    check_germs(gs)?;
    let a = ArtinianQuotient::new(filt, mu);
    let ideal = a.ideal_image(gs);
    let w = a.filtration_image::<C>(mu);
    Ok(w.sum(&ideal).dim() - ideal.dim())
}

/// `dim F_μ/(F_{μ+𝟙} + g_1F_{μ−ν_1} + … + g_kF_{μ−ν_k})`.
pub fn bar_dim<C: Scalar>(
    filt: &Filtration,
    mu: &[i64],
    gs: &[Polynomial<C>],
    nus: &[Vec<i64>],
) -> Result<usize, ArtinError> {
    check_germs(gs)?;
    if nus.len() != gs.len() {
        return Err(ArtinError::GeneratorCount(gs.len(), nus.len()));
    }
    let a = ArtinianQuotient::new(filt, mu);
    let w = a.filtration_image::<C>(mu);
    let mut rel = Subspace::new(a.dim());
    for (g, nu) in gs.iter().zip(nus) {
        let floor: Vec<i64> = mu.iter().zip(nu).map(|(m, v)| m - v).collect();
        a.multiples(g, Some(&floor), &mut rel);
    }
    Ok(w.dim() - w.intersection(&rel).dim())
}

/// One-index analogue of the induced dimension computed through the
/// intersection `(g) ∩ F̂_l`: `dim F̂_l/(F̂_{l+1} + (g)∩F̂_l)`.
pub fn intersection_dim<C: Scalar>(
    filt: &Filtration,
    mu: &[i64],
    gs: &[Polynomial<C>],
) -> Result<usize, ArtinError> {
    check_germs(gs)?;
    let a = ArtinianQuotient::new(filt, mu);
    let w = a.filtration_image::<C>(mu);
    let ideal = a.ideal_image(gs);
    Ok(w.dim() - w.intersection(&ideal).dim())
}

/// Whether `F_μ = F_{μ_1e_1} ∩ … ∩ F_{μ_re_r}` holds on `O_Y` modulo
/// `F_{μ+𝟙}`: compares `F_μ + I` with `∩_l (F_{μ_l e_l} + I)` inside
/// `A = O/F_{μ+𝟙}`.
pub fn induced_is_intersection<C: Scalar>(
    filt: &Filtration,
    mu: &[i64],
    gs: &[Polynomial<C>],
) -> Result<bool, ArtinError> {
    check_germs(gs)?;
    let a = ArtinianQuotient::new(filt, mu);
    let ideal = a.ideal_image(gs);
    let lhs = a.filtration_image::<C>(mu).sum(&ideal);
    let r = mu.len();
    let mut rhs: Option<Subspace<C>> = None;
    for l in 0..r {
        let mut lam = vec![0i64; r];
        lam[l] = mu[l];
        let x = a.filtration_image::<C>(&lam).sum(&ideal);
        rhs = Some(match rhs {
            None => x,
            Some(y) => y.intersection(&x),
        });
    }
    Ok(rhs.is_none_or(|y| y.same_as(&lhs)))
}

/// `dim O/(g_1, …, g_k)` for an ideal of finite colength, through the cuts
/// `A_c = O/𝔪^{c+1}`. At the first depth where every monomial of degree `c`
/// lies in `I + 𝔪^{c+1}`, Nakayama gives `𝔪^c ⊆ I` and the dimension is
/// `dim A_c − dim I_{A_c}`.
pub fn quotient_total_dim<C: Scalar>(
    gs: &[Polynomial<C>],
    max_depth: i64,
) -> Result<usize, ArtinError> {
    check_germs(gs)?;
    let n = gs.first().map_or(0, Polynomial::nvars);
    if n == 0 {
        return Ok(if gs.iter().all(Polynomial::is_zero) {
            1
        } else {
            0
        });
    }
    let filt = Filtration::degree(n);
    for c in 0..=max_depth {
        let a = ArtinianQuotient::new(&filt, &[c]);
        let ideal = a.ideal_image(gs);
        let top = a.filtration_image::<C>(&[c]);
        if top.is_subspace_of(&ideal) {
            return Ok(a.dim() - ideal.dim());
        }
    }
    Err(ArtinError::PossiblyInfinite(max_depth))
}

/// Per-μ graded data on the induced filtration.
#[derive(Debug, Clone, Serialize)]
pub struct GradedRow {
    pub mu: Vec<i64>,
    pub ambient: usize,
    pub induced: usize,
    pub bar: usize,
}

pub fn graded_report<C: Scalar>(
    filt: &Filtration,
    mus: &[Vec<i64>],
    gs: &[Polynomial<C>],
    nus: &[Vec<i64>],
) -> Result<Vec<GradedRow>, ArtinError> {
    mus.iter()
        .map(|mu| {
            Ok(GradedRow {
                mu: mu.clone(),
                ambient: filt.graded_dim(mu),
                induced: induced_dim(filt, mu, gs)?,
                bar: bar_dim(filt, mu, gs, nus)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_polynomial;
    use crate::Poly;

    fn poly(s: &str) -> Poly {
        parse_polynomial(s, &["z1", "z2"]).unwrap()
    }

    fn f32() -> Filtration {
        Filtration::multi(vec![vec![3, 2]]).unwrap()
    }

    #[test]
    fn bases() {
        let a = ArtinianQuotient::new(&f32(), &[2]);
        assert_eq!(
            a.basis(),
            &[Exponent::new(vec![0, 0]), Exponent::new(vec![0, 1])]
        );
        assert_eq!(ArtinianQuotient::new(&f32(), &[-1]).dim(), 0);
        assert_eq!(ArtinianQuotient::new(&f32(), &[6]).dim(), 7);
    }

    #[test]
    fn ideal_images() {
        let a = ArtinianQuotient::new(&f32(), &[6]);
        assert_eq!(a.ideal_image(&[poly("z1^2+z2^3")]).dim(), 1);
        assert_eq!(a.ideal_image(&[poly("1")]).dim(), 7);
        assert_eq!(a.ideal_image(&[poly("z1^3*z2^3")]).dim(), 0);
    }

    #[test]
    fn induced_dims() {
        let g = [poly("z1^2+z2^3")];
        assert_eq!(induced_dim(&f32(), &[6], &g).unwrap(), 1);
        assert_eq!(induced_dim(&f32(), &[0], &g).unwrap(), 1);
        assert_eq!(induced_dim(&f32(), &[1], &g).unwrap(), 0);
        assert_eq!(bar_dim(&f32(), &[6], &g, &[vec![6]]).unwrap(), 1);
    }

    #[test]
    fn total_dims() {
        assert_eq!(
            quotient_total_dim(&[poly("2*z1"), poly("3*z2^2")], 20).unwrap(),
            2
        );
        assert_eq!(
            quotient_total_dim(&[poly("z1"), poly("z2")], 20).unwrap(),
            1
        );
        assert_eq!(
            quotient_total_dim(&[poly("3*z1^2+z2"), poly("z1+3*z2^2")], 20).unwrap(),
            1
        );
        assert!(matches!(
            quotient_total_dim(&[poly("z1*z2")], 6),
            Err(ArtinError::PossiblyInfinite(6))
        ));
    }

    #[test]
    fn single_index_equality_is_trivial() {
        assert!(induced_is_intersection(&f32(), &[5], &[poly("z1^2+z2^3")]).unwrap());
    }
}
