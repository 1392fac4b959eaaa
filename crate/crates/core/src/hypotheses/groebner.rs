//! Buchberger's algorithm over an exact field, with the product and chain
//! criteria and hard resource caps.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::polycore::{Exponent, Polynomial};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &[i64], b: &[i64]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => {
                let (da, db): (i64, i64) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_pairs: usize,
    pub max_degree: i64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_pairs: 20_000,
            max_degree: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("S-pair limit of {0} exceeded")]
    PairLimit(usize),
    #[error("degree limit of {0} exceeded")]
    DegreeLimit(i64),
    #[error("generator has negative exponents")]
    Laurent,
}

/// A polynomial as a term list sorted strictly descending in a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedPoly<C> {
    terms: Vec<(Vec<i64>, C)>,
}

impl<C: Scalar> SortedPoly<C> {
    pub fn from_polynomial(p: &Polynomial<C>, order: MonomialOrder) -> Result<Self, GroebnerError> {
        if !p.is_germ() {
            return Err(GroebnerError::Laurent);
        }
        let mut terms: Vec<(Vec<i64>, C)> = p
            .terms()
            .map(|(e, c)| (e.as_slice().to_vec(), c.clone()))
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(SortedPoly { terms })
    }

    pub fn to_polynomial(&self, nvars: usize) -> Polynomial<C> {
        Polynomial::from_terms(
            nvars,
            self.terms
                .iter()
                .map(|(e, c)| (Exponent::new(e.clone()), c.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&[i64]> {
        self.terms.first().map(|t| t.0.as_slice())
    }

    pub fn leading_coefficient(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn terms(&self) -> &[(Vec<i64>, C)] {
        &self.terms
    }

    fn degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|t| t.0.iter().sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    fn monic(mut self) -> Self {
        if let Some(lc) = self.leading_coefficient().cloned() {
            for t in &mut self.terms {
                t.1 = t.1.clone() / lc.clone();
            }
        }
        self
    }

    /// `self − c·x^m·other`, merging the sorted term lists.
    fn sub_mul(&self, c: &C, m: &[i64], other: &SortedPoly<C>, order: MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let shifted = other.terms.iter().map(|(e, d)| {
            (
                e.iter().zip(m).map(|(a, b)| a + b).collect::<Vec<_>>(),
                c.clone() * d.clone(),
            )
        });
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => a.next().unwrap(),
                (None, Some(_)) => {
                    let (e, d) = b.next().unwrap();
                    (e, -d)
                }
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Greater => a.next().unwrap(),
                    Ordering::Less => {
                        let (e, d) = b.next().unwrap();
                        (e, -d)
                    }
                    Ordering::Equal => {
                        let (e, c1) = a.next().unwrap();
                        let (_, c2) = b.next().unwrap();
                        (e, c1 - c2)
                    }
                },
            };
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        SortedPoly { terms: out }
    }
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Full normal form of `f` modulo `basis`.
pub fn reduce<C: Scalar>(
    f: &SortedPoly<C>,
    basis: &[SortedPoly<C>],
    order: MonomialOrder,
) -> SortedPoly<C> {
    let mut f = f.clone();
    let mut rem = Vec::new();
    while let Some((lm, lc)) = f.terms.first().cloned() {
        let hit = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|m| divides(m, &lm)));
        match hit {
            Some(g) => {
                let c = lc / g.leading_coefficient().unwrap().clone();
                let m = diff(&lm, g.leading_monomial().unwrap());
                f = f.sub_mul(&c, &m, g, order);
            }
            None => {
                rem.push((lm, lc));
                f.terms.remove(0);
            }
        }
    }
    SortedPoly { terms: rem }
}

pub fn s_polynomial<C: Scalar>(
    f: &SortedPoly<C>,
    g: &SortedPoly<C>,
    order: MonomialOrder,
) -> SortedPoly<C> {
    let (mf, mg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lcm(mf, mg);
    let f1 = SortedPoly { terms: Vec::new() }.sub_mul(
        &(-C::one() / f.leading_coefficient().unwrap().clone()),
        &diff(&l, mf),
        f,
        order,
    );
    f1.sub_mul(
        &(C::one() / g.leading_coefficient().unwrap().clone()),
        &diff(&l, mg),
        g,
        order,
    )
}

/// The reduced Gröbner basis of the ideal generated by `gens`, monic and
/// sorted by leading monomial (descending).
pub fn groebner<C: Scalar>(
    gens: &[Polynomial<C>],
    order: MonomialOrder,
    limits: &Limits,
) -> Result<Vec<SortedPoly<C>>, GroebnerError> {
    let mut basis: Vec<SortedPoly<C>> = Vec::new();
    for g in gens {
        let p = SortedPoly::from_polynomial(g, order)?;
        if !p.is_zero() {
            basis.push(p.monic());
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    let mut treated = 0usize;
    while let Some(&(i, j)) = pairs.iter().min_by(|x, y| {
        order
            .cmp(&pair_lcm(&basis, **x), &pair_lcm(&basis, **y))
            .then(x.cmp(y))
    }) {
        pairs.remove(&(i, j));
        let (mi, mj) = (
            basis[i].leading_monomial().unwrap(),
            basis[j].leading_monomial().unwrap(),
        );
        if mi.iter().zip(mj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(mi, mj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].leading_monomial().unwrap(), &l)
                && !pairs.contains(&key(i, k))
                && !pairs.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        treated += 1;
        if treated > limits.max_pairs {
            return Err(GroebnerError::PairLimit(limits.max_pairs));
        }
        let h = reduce(&s_polynomial(&basis[i], &basis[j], order), &basis, order);
        if h.is_zero() {
            continue;
        }
        if h.degree() > limits.max_degree {
            return Err(GroebnerError::DegreeLimit(limits.max_degree));
        }
        let k = basis.len();
        basis.push(h.monic());
        for i in 0..k {
            pairs.insert((i, k));
        }
    }
    Ok(reduced(basis, order))
}

fn pair_lcm<C: Scalar>(basis: &[SortedPoly<C>], (i, j): (usize, usize)) -> Vec<i64> {
    lcm(
        basis[i].leading_monomial().unwrap(),
        basis[j].leading_monomial().unwrap(),
    )
}

fn reduced<C: Scalar>(basis: Vec<SortedPoly<C>>, order: MonomialOrder) -> Vec<SortedPoly<C>> {
    let mut minimal: Vec<SortedPoly<C>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let m = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hm = h.leading_monomial().unwrap();
            k != i && divides(hm, m) && (hm != m || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<SortedPoly<C>> = (0..minimal.len())
        .map(|i| {
            let others: Vec<SortedPoly<C>> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, g)| g.clone())
                .collect();
            let g = &minimal[i];
            let tail = SortedPoly {
                terms: g.terms[1..].to_vec(),
            };
            let mut r = reduce(&tail, &others, order);
            r.terms.insert(0, g.terms[0].clone());
            r.monic()
        })
        .collect();
    out.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    out
}

/// Krull dimension of `k[z]/I` from the leading monomials of a Gröbner
/// basis: the largest set of variables containing the support of no leading
/// monomial. A unit in the basis gives `−1`.
pub fn dimension_from_leading<C: Scalar>(basis: &[SortedPoly<C>], nvars: usize) -> i64 {
    let lms: Vec<u64> = basis
        .iter()
        .map(|g| {
            g.leading_monomial()
                .unwrap()
                .iter()
                .enumerate()
                .fold(0u64, |m, (i, &e)| if e > 0 { m | 1 << i } else { m })
        })
        .collect();
    if lms.contains(&0) {
        return -1;
    }
    (0u64..1 << nvars)
        .filter(|s| lms.iter().all(|m| m & !s != 0))
        .map(|s| i64::from(s.count_ones()))
        .max()
        .unwrap_or(0)
}

/// Dimension of `V(gens) ⊆ ℂⁿ`, `−1` when empty.
pub fn ideal_dim_affine<C: Scalar>(
    gens: &[Polynomial<C>],
    nvars: usize,
    limits: &Limits,
) -> Result<i64, GroebnerError> {
    let gb = groebner(gens, MonomialOrder::Grevlex, limits)?;
    Ok(dimension_from_leading(&gb, nvars))
}

/// Dimension of `V(gens) ∩ (ℂ*)ⁿ`, `−1` when empty. Laurent generators are
/// first multiplied by a monomial to clear negative exponents; the torus is
/// realised as `{w·z_1⋯z_n = 1} ⊆ ℂⁿ⁺¹`, which is isomorphic to it, so no
/// correction of the dimension is needed.
pub fn ideal_dim_torus<C: Scalar>(
    gens: &[Polynomial<C>],
    nvars: usize,
    limits: &Limits,
) -> Result<i64, GroebnerError> {
    let m = nvars + 1;
    let mut lifted: Vec<Polynomial<C>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut lo = vec![0i64; nvars];
            for q in g.support() {
                for (l, x) in lo.iter_mut().zip(q.as_slice()) {
                    *l = (*l).min(*x);
                }
            }
            Polynomial::from_terms(
                m,
                g.terms().map(|(q, c)| {
                    let mut e: Vec<i64> =
                        q.as_slice().iter().zip(&lo).map(|(x, l)| x - l).collect();
                    e.push(0);
                    (Exponent::new(e), c.clone())
                }),
            )
        })
        .collect();
    lifted.push(Polynomial::from_terms(
        m,
        [
            (Exponent::new(vec![1; m]), C::one()),
            (Exponent::zero(m), -C::one()),
        ],
    ));
    ideal_dim_affine(&lifted, m, limits)
}
