//! Nerve Euler characteristics on a simplicial fan and the toric expression
//! `L(t) = Σ_μ Σ_{J⊂I} n_{I,J,μ}(χ_I − χ_J) t^μ`.
//!
//! Index pairs `I = (I¹, I²)` are stored as masks over the rays of the fan.
//! A ray belongs to `I_{μ,q}` when every label it carries is satisfied:
//! `q_i ≥ 0` for a label `e_i`, `⟨p_j, q⟩ ≥ μ_j` for a label `p_j`.
//! Intersections and inclusions of the cone data `J_λ` are componentwise,
//! which on masks is plain bitwise arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::fan::SimplicialFan;
use crate::series::{SeriesError, TruncatedSeries, Vanishing, Window};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToricError {
    #[error("fan has {0} rays; at most 24 are supported")]
    TooManyRays(usize),
    #[error("fan has {0} maximal cones; at most 24 are supported")]
    TooManyCones(usize),
    #[error("no vanishing boundary found up to box radius {0}")]
    NoBoundary(i64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `(I¹, I²)` as 0-based index sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IndexPair {
    pub e: Vec<usize>,
    pub p: Vec<usize>,
}

/// Nerve data of a fan: `χ_I` for every ray mask `I`.
#[derive(Debug, Clone)]
pub struct NerveTable {
    fan: SimplicialFan,
    chi: Vec<i64>,
}

impl NerveTable {
    /// Tabulates `χ_I = Σ_{∅≠Λ, ∩_{λ∈Λ} J_λ ⊆ I} (−1)^{|Λ|−1}` for all masks
    /// `I` via a subset-sum (zeta) transform.
    pub fn new(fan: &SimplicialFan) -> Result<Self, ToricError> {
        let nr = fan.rays().len();
        let cones = fan.maximal_cones();
        if nr > 24 {
            return Err(ToricError::TooManyRays(nr));
        }
        if cones.len() > 24 {
            return Err(ToricError::TooManyCones(cones.len()));
        }
        let masks: Vec<u32> = cones
            .iter()
            .map(|c| c.iter().fold(0u32, |m, &i| m | 1 << i))
            .collect();
        let full: u32 = if nr == 32 { u32::MAX } else { (1u32 << nr) - 1 };
        let mut f = vec![0i64; 1 << nr];
        for lam in 1u32..(1 << cones.len()) {
            let mut inter = full;
            for (k, m) in masks.iter().enumerate() {
                if lam >> k & 1 == 1 {
                    inter &= m;
                }
            }
            let sign = if lam.count_ones() % 2 == 1 { 1 } else { -1 };
            f[inter as usize] += sign;
        }
        for b in 0..nr {
            for s in 0..(1usize << nr) {
                if s >> b & 1 == 1 {
                    f[s] += f[s ^ (1 << b)];
                }
            }
        }
        Ok(NerveTable {
            fan: fan.clone(),
            chi: f,
        })
    }

    pub fn fan(&self) -> &SimplicialFan {
        &self.fan
    }

    pub fn chi_mask(&self, mask: u32) -> i64 {
        self.chi[mask as usize]
    }

    pub fn chi(&self, pair: &IndexPair) -> i64 {
        self.chi_mask(self.mask_of(pair))
    }

    fn mask_of(&self, pair: &IndexPair) -> u32 {
        self.fan.rays().iter().enumerate().fold(0u32, |m, (i, r)| {
            let e_ok = r.e.is_none_or(|x| pair.e.contains(&x));
            let p_ok = r.p.is_none_or(|x| pair.p.contains(&x));
            if e_ok && p_ok {
                m | 1 << i
            } else {
                m
            }
        })
    }

    /// The ray mask of `I_{μ,q}`.
    pub fn mask(&self, mu: &[i64], q: &[i64]) -> u32 {
        self.fan.rays().iter().enumerate().fold(0u32, |m, (i, r)| {
            let e_ok = r.e.is_none_or(|x| q[x] >= 0);
            let p_ok =
                r.p.is_none_or(|x| crate::polycore::dot(&r.vector, q) >= mu[x]);
            if e_ok && p_ok {
                m | 1 << i
            } else {
                m
            }
        })
    }

    /// `n_{I,J,μ}` for the pairs with `χ_I ≠ χ_J`. The q-box `[−B, B]ⁿ` grows
    /// shell by shell; it is accepted once `B > max|μ_j|` and two consecutive
    /// outer shells add nothing.
    pub fn n_ij(&self, mu: &[i64], max_radius: i64) -> Result<NCounts, ToricError> {
        let n = self.fan.dim();
        let mu1: Vec<i64> = mu.iter().map(|m| m + 1).collect();
        let start = mu.iter().map(|m| m.abs()).max().unwrap_or(0) + 1;
        let mut counts: BTreeMap<(IndexPair, IndexPair), (u64, i64, i64)> = BTreeMap::new();
        let mut quiet = 0;
        for radius in 0..=max_radius {
            let mut hit = false;
            for q in shell(n, radius) {
                let (a, b) = (self.mask(mu, &q), self.mask(&mu1, &q));
                let (ca, cb) = (self.chi_mask(a), self.chi_mask(b));
                if ca != cb {
                    hit = true;
                    let key = (i_mu_q(&self.fan, mu, &q), i_mu_q(&self.fan, &mu1, &q));
                    counts.entry(key).or_insert((0, ca, cb)).0 += 1;
                }
            }
            quiet = if hit { 0 } else { quiet + 1 };
            if radius >= start && quiet >= 2 {
                let rows = counts
                    .into_iter()
                    .map(|((i, j), (n, chi_i, chi_j))| NRow {
                        i,
                        j,
                        n,
                        chi_i,
                        chi_j,
                    })
                    .collect();
                return Ok(NCounts {
                    mu: mu.to_vec(),
                    radius,
                    rows,
                });
            }
        }
        Err(ToricError::NoBoundary(max_radius))
    }

    /// `L(μ) = Σ_{I,J} n_{I,J,μ}(χ_I − χ_J)`.
    pub fn l_coefficient(&self, mu: &[i64], max_radius: i64) -> Result<BigInt, ToricError> {
        Ok(self.n_ij(mu, max_radius)?.l_value())
    }
}

/// One row of `n_{I,J,μ}` data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NRow {
    pub i: IndexPair,
    pub j: IndexPair,
    pub n: u64,
    pub chi_i: i64,
    pub chi_j: i64,
}

/// Counts for one μ together with the box radius that certified them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NCounts {
    pub mu: Vec<i64>,
    pub radius: i64,
    pub rows: Vec<NRow>,
}

impl NCounts {
    pub fn total(&self) -> u64 {
        self.rows.iter().map(|r| r.n).sum()
    }

    pub fn l_value(&self) -> BigInt {
        self.rows
            .iter()
            .map(|r| BigInt::from(r.n) * BigInt::from(r.chi_i - r.chi_j))
            .sum()
    }

    /// CSV rows `μ;I¹;I²;J¹;J²;n;χ_I;χ_J` with 1-based indices.
    pub fn to_csv(&self) -> String {
        let set = |v: &[usize]| {
            v.iter()
                .map(|x| (x + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mu = self
            .mu
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        let mut out = String::from("mu,I1,I2,J1,J2,n,chi_I,chi_J\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                mu,
                set(&r.i.e),
                set(&r.i.p),
                set(&r.j.e),
                set(&r.j.p),
                r.n,
                r.chi_i,
                r.chi_j
            ));
        }
        out
    }
}

/// `I_{μ,q} = ({i : q_i ≥ 0}, {j : ⟨p_j,q⟩ ≥ μ_j})`.
pub fn i_mu_q(fan: &SimplicialFan, mu: &[i64], q: &[i64]) -> IndexPair {
    let e = (0..fan.dim()).filter(|&i| q[i] >= 0).collect();
    let p = fan
        .rays()
        .iter()
        .filter_map(|r| r.p.filter(|&j| crate::polycore::dot(&r.vector, q) >= mu[j]))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    IndexPair { e, p }
}

/// Points with max-norm exactly `radius`.
fn shell(n: usize, radius: i64) -> impl Iterator<Item = Vec<i64>> {
    Window::cube(n, -radius, radius)
        .points()
        .filter(move |q| q.iter().any(|x| x.abs() == radius))
        .collect::<Vec<_>>()
        .into_iter()
}

/// The toric series on a window of exponents `μ`.
pub fn l_toric(
    fan: &SimplicialFan,
    window: &Window,
    max_radius: i64,
) -> Result<TruncatedSeries, ToricError> {
    let table = NerveTable::new(fan)?;
    let mut err = None;
    let s = TruncatedSeries::from_fn(window.clone(), Vanishing::Unknown, |mu| {
        match table.l_coefficient(mu, max_radius) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                BigInt::from(0)
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(s),
    }
}
