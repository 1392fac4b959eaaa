use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{dd, NewtonError};
use crate::linalg::{primitive, primitive_from_rational, rref, to_rational_vec};
use crate::polycore::Exponent;
use crate::Rational;

/// A lattice polytope `conv(S)` for Laurent supports `S ⊂ ℤⁿ`.
///
/// Lower-dimensional polytopes are handled by projecting onto the pivot
/// coordinates of their affine hull. Facet normals are then defined only
/// modulo the orthogonal complement of the direction space; they are
/// stored in canonical form, the primitive integer multiple of their
/// orthogonal projection onto the direction space.
#[derive(Debug, Clone)]
pub struct Polytope {
    n: usize,
    points: Vec<Exponent>,
    /// Row-reduced basis of the direction space.
    directions: Vec<Vec<Rational>>,
    facets: Vec<Vec<BigInt>>,
}

impl Polytope {
    pub fn new<'a, I: IntoIterator<Item = &'a Exponent>>(pts: I) -> Result<Self, NewtonError> {
        let points: Vec<Exponent> = pts
            .into_iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let base = points.first().ok_or(NewtonError::EmptySupport)?.clone();
        let n = base.len();
        if points.iter().any(|q| q.len() != n) {
            return Err(NewtonError::DimensionMismatch);
        }
        let mut directions: Vec<Vec<Rational>> = points
            .iter()
            .skip(1)
            .map(|q| to_rational_vec(q.checked_sub(&base).expect("small").as_slice()))
            .collect();
        let pivots = if directions.is_empty() {
            Vec::new()
        } else {
            rref(&mut directions)
        };
        let d = pivots.len();
        let mut facets = Vec::new();
        if d >= 1 {
            let rows: Vec<Vec<BigInt>> = points
                .iter()
                .map(|q| {
                    let mut r: Vec<BigInt> = pivots.iter().map(|&c| BigInt::from(q[c])).collect();
                    r.push((-1).into());
                    r
                })
                .collect();
            for ray in dd::extreme_rays(&rows) {
                let a = &ray.vector[..d];
                if a.iter().all(Zero::is_zero) {
                    continue;
                }
                let mut full = vec![BigInt::zero(); n];
                for (k, &c) in pivots.iter().enumerate() {
                    full[c] = a[k].clone();
                }
                facets.push(full);
            }
        }
        let mut p = Polytope {
            n,
            points,
            directions,
            facets: Vec::new(),
        };
        let mut canon: Vec<Vec<BigInt>> = facets.iter().map(|f| p.canonical_normal(f)).collect();
        canon.sort();
        canon.dedup();
        p.facets = canon;
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.n
    }

    pub fn points(&self) -> &[Exponent] {
        &self.points
    }

    /// Canonical facet normals (inward).
    pub fn facet_normals(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    /// Primitive integer multiple of the projection of `w` onto the
    /// direction space.
    pub fn canonical_normal(&self, w: &[BigInt]) -> Vec<BigInt> {
        if self.is_full() {
            return primitive(w);
        }
        // Orthogonal projection: solve (B Bᵀ) c = B w, projection = Bᵀ c.
        let b = &self.directions;
        let wr: Vec<Rational> = w
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        let gram: Vec<Vec<Rational>> = b
            .iter()
            .map(|r1| b.iter().map(|r2| dotq(r1, r2)).collect())
            .collect();
        let rhs: Vec<Rational> = b.iter().map(|r| dotq(r, &wr)).collect();
        let c = crate::linalg::solve(&gram, &rhs).expect("independent directions");
        let proj: Vec<Rational> = (0..self.n)
            .map(|i| b.iter().zip(&c).map(|(r, ci)| &r[i] * ci).sum())
            .collect();
        primitive_from_rational(&proj)
    }

    fn min_pairing(&self, w: &[BigInt]) -> BigInt {
        self.points
            .iter()
            .map(|q| pair(w, q))
            .min()
            .expect("nonempty")
    }

    /// Points of the face minimizing `⟨w, ·⟩`.
    pub fn face(&self, w: &[BigInt]) -> Vec<&Exponent> {
        let m = self.min_pairing(w);
        self.points.iter().filter(|q| pair(w, q) == m).collect()
    }

    /// Dimension of the face minimizing `⟨w, ·⟩`.
    pub fn face_dim(&self, w: &[BigInt]) -> usize {
        affine_dim(&self.face(w))
    }

    /// Minkowski sum.
    pub fn minkowski(&self, other: &Polytope) -> Result<Polytope, NewtonError> {
        let mut s = BTreeSet::new();
        for a in &self.points {
            for b in &other.points {
                s.insert(a.checked_add(b).map_err(|_| NewtonError::Overflow)?);
            }
        }
        Polytope::new(&s)
    }

    /// The set of rays of the (normal) dual fan, in canonical form.
    pub fn edge_set(&self) -> BTreeSet<Vec<BigInt>> {
        self.facets.iter().cloned().collect()
    }

    fn direction_space_equals(&self, other: &Polytope) -> bool {
        self.directions == other.directions
    }
}

fn dotq(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn pair(w: &[BigInt], q: &Exponent) -> BigInt {
    w.iter()
        .zip(q.as_slice())
        .map(|(a, &b)| a * BigInt::from(b))
        .sum()
}

pub fn affine_dim(pts: &[&Exponent]) -> usize {
    let Some(base) = pts.first() else { return 0 };
    let mut rows: Vec<Vec<Rational>> = pts
        .iter()
        .skip(1)
        .map(|q| to_rational_vec(q.checked_sub(base).expect("small").as_slice()))
        .collect();
    if rows.is_empty() {
        return 0;
    }
    rref(&mut rows).len()
}

/// The one-dimensional cones of the dual fans coincide: same direction
/// space and the same canonical facet normals.
pub fn edge_sets_equal(polys: &[Polytope]) -> bool {
    polys
        .windows(2)
        .all(|w| w[0].direction_space_equals(&w[1]) && w[0].edge_set() == w[1].edge_set())
}

/// For `k = 2` and `n ≥ 4`: for every facet of `Δ_1 + Δ_2` with normal `p`,
/// if `face_p(Δ_2)` is a facet of `Δ_2` then `dim face_p(Δ_1) ≥ 2`, and
/// vice versa.
pub fn mixed_faces_condition(polys: &[Polytope]) -> Result<bool, NewtonError> {
    let [a, b] = polys else {
        return Err(NewtonError::NeedTwo(polys.len()));
    };
    if a.nvars() < 4 {
        return Ok(false);
    }
    let sum = a.minkowski(b)?;
    Ok(sum.facet_normals().iter().all(|p| {
        let ok = |x: &Polytope, y: &Polytope| {
            y.dim() == 0 || y.face_dim(p) + 1 != y.dim() || x.face_dim(p) >= 2
        };
        ok(a, b) && ok(b, a)
    }))
}

/// `dim(Δ_1+…+Δ_j) = dim Δ_j` for `2 ≤ j ≤ k` and `dim Δ_j > j` for all `j`.
pub fn sum_dims_condition(polys: &[Polytope]) -> Result<bool, NewtonError> {
    let mut acc: Option<Polytope> = None;
    for (idx, p) in polys.iter().enumerate() {
        let j = idx + 1;
        if p.dim() <= j {
            return Ok(false);
        }
        acc = Some(match acc {
            None => p.clone(),
            Some(s) => {
                let s = s.minkowski(p)?;
                if s.dim() != p.dim() {
                    return Ok(false);
                }
                s
            }
        });
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Exponent> {
        v.iter().map(|x| Exponent::from(*x)).collect()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn square_and_segment() {
        let sq = Polytope::new(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert!(sq.is_full());
        assert_eq!(sq.facet_normals().len(), 4);
        let seg = Polytope::new(&pts(&[&[0, 0], &[1, 1]])).unwrap();
        assert_eq!(seg.dim(), 1);
        assert!(!seg.is_full());
        assert_eq!(seg.facet_normals(), &[bi(&[-1, -1]), bi(&[1, 1])]);
        assert_eq!(seg.face_dim(&bi(&[1, 0])), 0);
        assert_eq!(sq.face_dim(&bi(&[0, 1])), 1);
    }

    #[test]
    fn scaling_keeps_edges() {
        let t = Polytope::new(&pts(&[&[0, 0], &[2, 0], &[0, 3]])).unwrap();
        let t2 = Polytope::new(&pts(&[&[0, 0], &[4, 0], &[0, 6]])).unwrap();
        assert!(edge_sets_equal(&[t.clone(), t2]));
        let other = Polytope::new(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert!(!edge_sets_equal(&[t, other]));
    }
}
