//! Newton polyhedra `conv(S) + ℝ₊ⁿ`, their compact facets, initial parts
//! and polyhedral predicates.

pub mod dd;
mod polytope;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::linalg::{rank, to_i64_vec};
use crate::polycore::{dot, Exponent, Polynomial};
use crate::scalar::Scalar;

pub use polytope::{edge_sets_equal, mixed_faces_condition, sum_dims_condition, Polytope};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NewtonError {
    #[error("empty support")]
    EmptySupport,
    #[error("support has negative exponents")]
    NotGerm,
    #[error("support dimension mismatch")]
    DimensionMismatch,
    #[error("facet data exceeds i64")]
    Overflow,
    #[error("the mixed-faces condition needs exactly two polyhedra, got {0}")]
    NeedTwo(usize),
}

/// A facet `{q : ⟨p, q⟩ = ν}` with primitive inward normal `p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn value(&self, q: &Exponent) -> i64 {
        q.pairing(&self.normal)
    }

    pub fn is_compact(&self) -> bool {
        self.normal.iter().all(|&x| x > 0)
    }
}

#[derive(Debug, Clone)]
pub struct NewtonPolyhedron {
    n: usize,
    support: Vec<Exponent>,
    vertices: Vec<Exponent>,
    facets: Vec<Facet>,
    unbounded: Vec<Facet>,
}

impl NewtonPolyhedron {
    /// The Newton polyhedron of a finite support set in ℕⁿ.
    ///
    /// Facets are found by double description on the cone of valid
    /// inequalities `⟨a, q⟩ ≥ b`: one row `(q, −1)` per support point and one
    /// row `(e_i, 0)` per recession direction. Compact facets (strictly
    /// positive normals) are sorted lexicographically by normal.
    pub fn from_support<'a, I: IntoIterator<Item = &'a Exponent>>(
        support: I,
    ) -> Result<Self, NewtonError> {
        let support: BTreeSet<Exponent> = support.into_iter().cloned().collect();
        let support: Vec<Exponent> = support.into_iter().collect();
        let n = support.first().ok_or(NewtonError::EmptySupport)?.len();
        if support.iter().any(|q| q.len() != n) {
            return Err(NewtonError::DimensionMismatch);
        }
        if !support.iter().all(Exponent::is_nonnegative) {
            return Err(NewtonError::NotGerm);
        }
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..n {
            let mut r = vec![BigInt::from(0); n + 1];
            r[i] = 1.into();
            rows.push(r);
        }
        for q in &support {
            let mut r: Vec<BigInt> = q.as_slice().iter().map(|&x| x.into()).collect();
            r.push((-1).into());
            rows.push(r);
        }
        let mut facets = Vec::new();
        let mut unbounded = Vec::new();
        for ray in dd::extreme_rays(&rows) {
            let v = to_i64_vec(&ray.vector).ok_or(NewtonError::Overflow)?;
            let (a, b) = v.split_at(n);
            if a.iter().all(|&x| x == 0) {
                continue;
            }
            let f = Facet {
                normal: a.to_vec(),
                offset: b[0],
            };
            if f.is_compact() {
                facets.push(f);
            } else {
                unbounded.push(f);
            }
        }
        facets.sort();
        unbounded.sort();
        let all: Vec<&Facet> = facets.iter().chain(&unbounded).collect();
        let vertices = support
            .iter()
            .filter(|q| {
                let tight: Vec<Vec<crate::Rational>> = all
                    .iter()
                    .filter(|f| f.value(q) == f.offset)
                    .map(|f| crate::linalg::to_rational_vec(&f.normal))
                    .collect();
                rank(&tight) == n
            })
            .cloned()
            .collect();
        Ok(NewtonPolyhedron {
            n,
            support,
            vertices,
            facets,
            unbounded,
        })
    }

    /// The Newton polyhedron of `g_1 ⋯ g_k`, built from the Minkowski sum of
    /// the vertex sets (vertices of a product never cancel).
    pub fn of_product<C: Scalar>(polys: &[Polynomial<C>]) -> Result<Self, NewtonError> {
        let mut acc: Option<Vec<Exponent>> = None;
        for g in polys {
            let own = NewtonPolyhedron::from_support(g.support())?;
            let verts = own.vertices;
            acc = Some(match acc {
                None => verts,
                Some(prev) => {
                    let mut s = BTreeSet::new();
                    for a in &prev {
                        for b in &verts {
                            s.insert(a.checked_add(b).map_err(|_| NewtonError::Overflow)?);
                        }
                    }
                    let pts: Vec<Exponent> = s.into_iter().collect();
                    NewtonPolyhedron::from_support(&pts)?.vertices
                }
            });
        }
        let pts = acc.ok_or(NewtonError::EmptySupport)?;
        NewtonPolyhedron::from_support(&pts)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[Exponent] {
        &self.support
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    /// Compact facets `p_1..p_r` in canonical order.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Facets with a zero normal component (non-compact).
    pub fn unbounded_facets(&self) -> &[Facet] {
        &self.unbounded
    }

    pub fn normals(&self) -> Vec<Vec<i64>> {
        self.facets.iter().map(|f| f.normal.clone()).collect()
    }

    pub fn offsets(&self) -> Vec<i64> {
        self.facets.iter().map(|f| f.offset).collect()
    }

    /// `min_{q ∈ Δ} ⟨w, q⟩` for `w ≥ 0`.
    pub fn support_function(&self, w: &[i64]) -> i64 {
        self.vertices
            .iter()
            .map(|q| q.pairing(w))
            .min()
            .expect("nonempty")
    }

    /// Vertices on the face minimizing `⟨w, ·⟩`.
    pub fn face_vertices(&self, w: &[i64]) -> Vec<&Exponent> {
        let m = self.support_function(w);
        self.vertices.iter().filter(|q| q.pairing(w) == m).collect()
    }

    /// Whether two compact facets meet, i.e. share a vertex.
    pub fn facets_meet(&self, j1: usize, j2: usize) -> bool {
        let (a, b) = (&self.facets[j1], &self.facets[j2]);
        self.vertices
            .iter()
            .any(|q| a.value(q) == a.offset && b.value(q) == b.offset)
    }

    /// Every pair of compact facets intersects.
    pub fn is_bistellar(&self) -> bool {
        let r = self.facets.len();
        (0..r).all(|a| (a + 1..r).all(|b| self.facets_meet(a, b)))
    }

    /// The polyhedron is always `n`-dimensional because of the orthant.
    pub fn is_full(&self) -> bool {
        true
    }

    /// Normal cones at the vertices, as generator lists: `e_i` for every
    /// coordinate facet through `v` and every compact facet through `v`.
    /// Only meaningful for convenient polyhedra, where every non-compact
    /// facet is a coordinate hyperplane.
    pub fn vertex_cones(&self) -> Vec<(Exponent, Vec<Vec<i64>>)> {
        self.vertices
            .iter()
            .map(|v| {
                let mut gens = Vec::new();
                for i in 0..self.n {
                    if v[i] == 0 {
                        let mut e = vec![0; self.n];
                        e[i] = 1;
                        gens.push(e);
                    }
                }
                for f in &self.facets {
                    if f.value(v) == f.offset {
                        gens.push(f.normal.clone());
                    }
                }
                (v.clone(), gens)
            })
            .collect()
    }
}

/// Each polynomial's support meets every coordinate axis.
pub fn is_convenient<C: Scalar>(polys: &[Polynomial<C>]) -> bool {
    polys.iter().all(|g| {
        let n = g.nvars();
        (0..n).all(|i| {
            g.support()
                .any(|q| q[i] > 0 && (0..n).all(|j| j == i || q[j] == 0))
        })
    })
}

/// `ν_{il} = min_{q ∈ supp g_i} ⟨p_l, q⟩`; one row per polynomial.
pub fn nu_matrix<C: Scalar>(
    polys: &[Polynomial<C>],
    facets: &[Facet],
) -> Result<Vec<Vec<i64>>, NewtonError> {
    polys
        .iter()
        .map(|g| {
            if g.is_zero() {
                return Err(NewtonError::EmptySupport);
            }
            Ok(facets
                .iter()
                .map(|f| g.support().map(|q| f.value(q)).min().expect("nonzero"))
                .collect())
        })
        .collect()
}

/// The terms of `g` with `⟨p_j, q⟩ = threshold_j` for every selected `j`.
pub fn initial_part<C: Scalar>(
    g: &Polynomial<C>,
    normals: &[&[i64]],
    thresholds: &[i64],
) -> Polynomial<C> {
    g.filter_terms(|q| {
        normals
            .iter()
            .zip(thresholds)
            .all(|(p, &t)| dot(p, q.as_slice()) == t)
    })
}

/// `in_J g` for a facet index set `J` (0-based), with thresholds taken from
/// row `nu` of the ν-matrix.
pub fn initial_part_facets<C: Scalar>(
    g: &Polynomial<C>,
    facets: &[Facet],
    nu: &[i64],
    j: &[usize],
) -> Polynomial<C> {
    let normals: Vec<&[i64]> = j.iter().map(|&x| facets[x].normal.as_slice()).collect();
    let th: Vec<i64> = j.iter().map(|&x| nu[x]).collect();
    initial_part(g, &normals, &th)
}

/// `in_σ g` for a cone generated by `e_i (i ∈ zero_coords)` and normals
/// `p` with their thresholds.
pub fn initial_part_cone<C: Scalar>(
    g: &Polynomial<C>,
    zero_coords: &[usize],
    normals: &[&[i64]],
    thresholds: &[i64],
) -> Polynomial<C> {
    initial_part(g, normals, thresholds).filter_terms(|q| zero_coords.iter().all(|&i| q[i] == 0))
}
