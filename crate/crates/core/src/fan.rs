//! Simplicial fans on the rays `e_1..e_n, p_1..p_r` covering ℝ₊ⁿ, the
//! piecewise linear functions `h_μ`, and the integrality constant `M`.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::linalg::{
    integer_kernel, nullspace, primitive_from_rational, solve, to_i64_vec, to_rational_vec,
    transpose,
};
use crate::newton::dd::extreme_rays;
use crate::newton::{dd::cone_facets, NewtonPolyhedron};
use crate::polycore::dot;
use crate::Rational;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("normal {0:?} is not strictly positive")]
    NotPositive(Vec<i64>),
    #[error("non-compact facet with normal {0:?}; the polyhedron is not convenient")]
    NotConvenient(Vec<i64>),
    #[error("normal has length {0}, expected {1}")]
    Length(usize, usize),
}

/// A ray of the fan. A vector equal to both some `e_i` and some `p_j`
/// carries both labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanRay {
    pub vector: Vec<i64>,
    pub e: Option<usize>,
    pub p: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialFan {
    n: usize,
    rays: Vec<FanRay>,
    maximal: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct FanDump<'a> {
    rays: Vec<&'a [i64]>,
    labels: Vec<String>,
    cones: &'a [Vec<usize>],
}

fn ray_list(normals: &[Vec<i64>], n: usize) -> Result<Vec<FanRay>, FanError> {
    let mut rays: Vec<FanRay> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            FanRay {
                vector: v,
                e: Some(i),
                p: None,
            }
        })
        .collect();
    for (j, p) in normals.iter().enumerate() {
        if p.len() != n {
            return Err(FanError::Length(p.len(), n));
        }
        if p.iter().any(|&x| x <= 0) {
            return Err(FanError::NotPositive(p.clone()));
        }
        match rays.iter_mut().find(|r| &r.vector == p) {
            Some(r) => r.p = Some(j),
            None => rays.push(FanRay {
                vector: p.clone(),
                e: None,
                p: Some(j),
            }),
        }
    }
    Ok(rays)
}

impl SimplicialFan {
    /// A simplicial refinement of the normal fan of a convenient `Δ`.
    ///
    /// Each vertex normal cone is triangulated by pulling rays in the global
    /// ray order (coordinate rays first, then `p_1..p_r`); since the pulling
    /// triangulation of a face depends only on the face, the pieces fit
    /// together into a fan.
    pub fn from_polyhedron(delta: &NewtonPolyhedron) -> Result<Self, FanError> {
        let n = delta.nvars();
        if let Some(f) = delta
            .unbounded_facets()
            .iter()
            .find(|f| f.offset != 0 || f.normal.iter().filter(|&&x| x != 0).count() != 1)
        {
            return Err(FanError::NotConvenient(f.normal.clone()));
        }
        let rays = ray_list(&delta.normals(), n)?;
        let index: BTreeMap<&[i64], usize> = rays
            .iter()
            .enumerate()
            .map(|(i, r)| (r.vector.as_slice(), i))
            .collect();
        let mut maximal = BTreeSet::new();
        for (_, gens) in delta.vertex_cones() {
            let mut idx: Vec<usize> = gens.iter().map(|g| index[g.as_slice()]).collect();
            idx.sort();
            idx.dedup();
            for s in pull(&rays, &idx, n) {
                maximal.insert(s);
            }
        }
        Ok(SimplicialFan {
            n,
            rays,
            maximal: maximal.into_iter().collect(),
        })
    }

    /// Stellar subdivision of the coordinate cone, inserting `p_1..p_r` in
    /// order. The result need not refine the normal fan of `Δ`; see
    /// [`SimplicialFan::refines`].
    pub fn stellar(normals: &[Vec<i64>], n: usize) -> Result<Self, FanError> {
        let rays = ray_list(normals, n)?;
        let mut maximal: Vec<Vec<usize>> = vec![(0..n).collect()];
        for (ri, ray) in rays.iter().enumerate().skip(n) {
            let q = to_rational_vec(&ray.vector);
            let mut next = Vec::new();
            for cone in maximal {
                match barycentric(&rays, &cone, &q) {
                    Some(l) if l.iter().all(|x| !x.is_negative()) => {
                        for (i, li) in l.iter().enumerate() {
                            if li.is_positive() {
                                let mut c = cone.clone();
                                c[i] = ri;
                                c.sort();
                                next.push(c);
                            }
                        }
                    }
                    _ => next.push(cone),
                }
            }
            maximal = next;
        }
        maximal.sort();
        Ok(SimplicialFan { n, rays, maximal })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[FanRay] {
        &self.rays
    }

    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    /// All nonempty faces of maximal cones.
    pub fn cones(&self) -> Vec<Vec<usize>> {
        let mut all = BTreeSet::new();
        for c in &self.maximal {
            for mask in 1u32..(1 << c.len()) {
                all.insert(
                    (0..c.len())
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| c[b])
                        .collect::<Vec<_>>(),
                );
            }
        }
        all.into_iter().collect()
    }

    pub fn ray_index_of_p(&self, j: usize) -> Option<usize> {
        self.rays.iter().position(|r| r.p == Some(j))
    }

    /// Coordinate indices `i` with `e_i` a generator of the cone.
    pub fn e_part(&self, cone: &[usize]) -> Vec<usize> {
        cone.iter().filter_map(|&i| self.rays[i].e).collect()
    }

    /// Facet indices `j` with `p_j` a generator of the cone.
    pub fn p_part(&self, cone: &[usize]) -> Vec<usize> {
        cone.iter().filter_map(|&i| self.rays[i].p).collect()
    }

    /// Barycentric coordinates of `q` in a maximal cone.
    pub fn coordinates(&self, cone: usize, q: &[Rational]) -> Vec<Rational> {
        barycentric(&self.rays, &self.maximal[cone], q).expect("simplicial cone")
    }

    /// Indices of maximal cones containing `q`.
    pub fn cones_containing(&self, q: &[Rational]) -> Vec<usize> {
        (0..self.maximal.len())
            .filter(|&c| self.coordinates(c, q).iter().all(|x| !x.is_negative()))
            .collect()
    }

    /// Pairs of maximal cones sharing a facet, with the shared generators.
    pub fn walls(&self) -> Vec<(usize, usize, Vec<usize>)> {
        let mut by_facet: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, c) in self.maximal.iter().enumerate() {
            for skip in 0..c.len() {
                let f: Vec<usize> = c
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &x)| x)
                    .collect();
                by_facet.entry(f).or_default().push(ci);
            }
        }
        by_facet
            .into_iter()
            .filter(|(_, cs)| cs.len() == 2)
            .map(|(f, cs)| (cs[0], cs[1], f))
            .collect()
    }

    /// Each maximal cone lies in the normal cone of a single vertex of `Δ`.
    pub fn refines(&self, delta: &NewtonPolyhedron) -> bool {
        self.maximal.iter().all(|c| {
            delta.vertices().iter().any(|v| {
                c.iter().all(|&i| {
                    let w = &self.rays[i].vector;
                    v.pairing(w) == delta.support_function(w)
                })
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let labels = self
            .rays
            .iter()
            .map(|r| match (r.e, r.p) {
                (Some(i), Some(j)) => format!("e{}=p{}", i + 1, j + 1),
                (Some(i), None) => format!("e{}", i + 1),
                (None, Some(j)) => format!("p{}", j + 1),
                (None, None) => unreachable!("every ray is labeled"),
            })
            .collect();
        serde_json::to_value(FanDump {
            rays: self.rays.iter().map(|r| r.vector.as_slice()).collect(),
            labels,
            cones: &self.maximal,
        })
        .expect("serializable")
    }

    /// `h_μ`: zero on coordinate rays, `μ_j` on `p_j`, linear on each cone.
    pub fn h_mu(&self, mu: &[i64]) -> PlFunction {
        let values: Vec<Rational> = self
            .rays
            .iter()
            .map(|r| {
                r.p.map_or_else(Rational::zero, |j| Rational::from_integer(mu[j].into()))
            })
            .collect();
        let forms = self
            .maximal
            .iter()
            .map(|c| {
                let g: Vec<Vec<Rational>> = c
                    .iter()
                    .map(|&i| to_rational_vec(&self.rays[i].vector))
                    .collect();
                let b: Vec<Rational> = c.iter().map(|&i| values[i].clone()).collect();
                solve(&g, &b).expect("simplicial cone")
            })
            .collect();
        PlFunction {
            fan: self.clone(),
            values,
            forms,
        }
    }
}

fn barycentric(rays: &[FanRay], cone: &[usize], q: &[Rational]) -> Option<Vec<Rational>> {
    let g: Vec<Vec<Rational>> = cone
        .iter()
        .map(|&i| to_rational_vec(&rays[i].vector))
        .collect();
    solve(&transpose(&g), q)
}

fn pull(rays: &[FanRay], gens: &[usize], d: usize) -> Vec<Vec<usize>> {
    if gens.len() == d {
        return vec![gens.to_vec()];
    }
    let vecs: Vec<Vec<i64>> = gens.iter().map(|&i| rays[i].vector.clone()).collect();
    let apex = gens[0];
    let mut out = Vec::new();
    for facet in cone_facets(&vecs) {
        if facet.contains(&0) {
            continue;
        }
        let sub: Vec<usize> = facet.iter().map(|&k| gens[k]).collect();
        for mut s in pull(rays, &sub, d - 1) {
            s.push(apex);
            s.sort();
            out.push(s);
        }
    }
    out
}

/// A piecewise linear function on a simplicial fan.
#[derive(Debug, Clone)]
pub struct PlFunction {
    fan: SimplicialFan,
    values: Vec<Rational>,
    forms: Vec<Vec<Rational>>,
}

impl PlFunction {
    pub fn fan(&self) -> &SimplicialFan {
        &self.fan
    }

    pub fn ray_values(&self) -> &[Rational] {
        &self.values
    }

    /// The linear form on each maximal cone.
    pub fn forms(&self) -> &[Vec<Rational>] {
        &self.forms
    }

    pub fn eval(&self, q: &[Rational]) -> Rational {
        let c = *self
            .fan
            .cones_containing(q)
            .first()
            .expect("point of the positive orthant");
        dotq(&self.forms[c], q)
    }

    /// Convex in the toric sense: `h = min` of its linear pieces, checked
    /// across every wall by `⟨ℓ_σ, u'⟩ ≥ h(u')` for the opposite generator
    /// `u'` of the neighbouring cone.
    pub fn is_convex(&self) -> bool {
        let cones = self.fan.maximal_cones();
        self.fan.walls().into_iter().all(|(a, b, shared)| {
            let check = |from: usize, to: usize| {
                let u = cones[to]
                    .iter()
                    .find(|i| !shared.contains(i))
                    .expect("wall");
                dotq(
                    &self.forms[from],
                    &to_rational_vec(&self.fan.rays[*u].vector),
                ) >= self.values[*u]
            };
            check(a, b) && check(b, a)
        })
    }

    /// Adjacent linear forms agree on every shared generator.
    pub fn is_well_defined(&self) -> bool {
        self.fan.walls().into_iter().all(|(a, b, shared)| {
            shared.iter().all(|&i| {
                let u = to_rational_vec(&self.fan.rays[i].vector);
                dotq(&self.forms[a], &u) == dotq(&self.forms[b], &u)
            })
        })
    }
}

fn dotq(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `M = lcm(ν_1..ν_r)`, for which `ψ(q) = M·min_j ⟨p_j,q⟩/ν_j` is integral.
pub fn compute_m(offsets: &[i64]) -> i64 {
    offsets.iter().fold(1i64, |l, &v| l.lcm(&v))
}

/// The least `M` making `ψ` integral on `ℕⁿ`.
///
/// On the cone `C_j` where the `j`-th ratio attains the minimum, `ψ` is the
/// linear form `M⟨p_j,q⟩/ν_j`, and the lattice points of `C_j` generate the
/// lattice `Λ_j = span(C_j) ∩ ℤⁿ`. So `M` must be a multiple of
/// `ν_j / gcd(ν_j, d_j)` with `d_j = gcd ⟨p_j, Λ_j⟩`, for every `j` with
/// `C_j ≠ {0}`, and the lcm of these suffices.
pub fn compute_m_minimal(normals: &[Vec<i64>], offsets: &[i64]) -> i64 {
    let n = normals.first().map_or(0, Vec::len);
    let mut m = 1i64;
    for (j, (pj, &nj)) in normals.iter().zip(offsets).enumerate() {
        let mut rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|k| BigInt::from(i64::from(i == k))).collect())
            .collect();
        for (i, (pi, &ni)) in normals.iter().zip(offsets).enumerate() {
            if i != j {
                rows.push(
                    pi.iter()
                        .zip(pj)
                        .map(|(a, b)| BigInt::from(nj * a - ni * b))
                        .collect(),
                );
            }
        }
        let rays = extreme_rays(&rows);
        if rays.is_empty() {
            continue;
        }
        let span: Vec<Vec<Rational>> = rays
            .iter()
            .map(|r| {
                r.vector
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        let normal_space: Vec<Vec<i64>> = nullspace(&span, n)
            .iter()
            .map(|v| to_i64_vec(&primitive_from_rational(v)).expect("small normal"))
            .collect();
        let d = integer_kernel(&normal_space, n)
            .iter()
            .fold(0i64, |g, b| g.gcd(&dot(pj, b)));
        m = m.lcm(&(nj / nj.gcd(&d)));
    }
    m
}
