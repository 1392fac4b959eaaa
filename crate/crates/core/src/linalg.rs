//! Exact linear algebra: dense elimination helpers, integer vector
//! normalization, and sparse subspaces in reduced row echelon form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Scalar;
use crate::Rational;

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref<C: Scalar>(rows: &mut Vec<Vec<C>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = C::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row[col..ncols].iter_mut().zip(&pivot[col..ncols]) {
                    *x = x.clone() - p.clone() * f.clone();
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<C: Scalar>(rows: &[Vec<C>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace<C: Scalar>(rows: &[Vec<C>], ncols: usize) -> Vec<Vec<C>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![C::zero(); ncols];
            x[f] = C::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                x[pc] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// The unique solution of `A x = b`, or `None` if there is none or it is
/// not unique.
pub fn solve<C: Scalar>(a: &[Vec<C>], b: &[C]) -> Option<Vec<C>> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<C>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != ncols || pivots.contains(&ncols) {
        return None;
    }
    Some(aug.iter().map(|r| r[ncols].clone()).collect())
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let ncols = m.first().map_or(0, Vec::len);
    (0..ncols)
        .map(|c| m.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// Divides out the content of an integer vector; the zero vector is
/// returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Scales a rational vector by a positive factor to a primitive integer
/// vector.
pub fn primitive_from_rational(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    primitive(&ints)
}

pub fn to_i64_vec(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}

pub fn to_rational_vec(v: &[i64]) -> Vec<Rational> {
    v.iter()
        .map(|&x| Rational::from_integer(x.into()))
        .collect()
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm_i64(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

pub fn abs_content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x)).abs()
}

/// A basis of the integer kernel `{x ∈ ℤⁿ : Bx = 0}`, by unimodular column
/// operations bringing `B` to column echelon form.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut b: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.into()).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let swap =
        |m: &mut Vec<Vec<i128>>, a: usize, c: usize| m.iter_mut().for_each(|row| row.swap(a, c));
    let axpy = |m: &mut Vec<Vec<i128>>, dst: usize, q: i128, src: usize| {
        m.iter_mut().for_each(|row| row[dst] -= q * row[src]);
    };
    let mut piv = 0;
    for r in 0..b.len() {
        while piv < n {
            let Some(c) = (piv..n)
                .filter(|&c| b[r][c] != 0)
                .min_by_key(|&c| b[r][c].abs())
            else {
                break;
            };
            swap(&mut b, piv, c);
            swap(&mut u, piv, c);
            let mut clean = true;
            for c2 in piv + 1..n {
                if b[r][c2] != 0 {
                    let q = b[r][c2] / b[r][piv];
                    axpy(&mut b, c2, q, piv);
                    axpy(&mut u, c2, q, piv);
                    clean &= b[r][c2] == 0;
                }
            }
            if clean {
                piv += 1;
                break;
            }
        }
    }
    (piv..n)
        .map(|c| {
            u.iter()
                .map(|row| i64::try_from(row[c]).expect("kernel entry fits i64"))
                .collect()
        })
        .collect()
}

pub type SparseVec<C> = BTreeMap<usize, C>;

/// A subspace of `C^dim` held as a sparse basis in reduced row echelon
/// form, keyed by pivot column.
#[derive(Clone, Debug)]
pub struct Subspace<C> {
    dim: usize,
    rows: BTreeMap<usize, SparseVec<C>>,
}

impl<C: Scalar> Subspace<C> {
    pub fn new(ambient_dim: usize) -> Self {
        Subspace {
            dim: ambient_dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn spanned_by<I: IntoIterator<Item = SparseVec<C>>>(ambient_dim: usize, vs: I) -> Self {
        let mut s = Self::new(ambient_dim);
        for v in vs {
            s.insert(v);
        }
        s
    }

    /// The coordinate subspace on the given basis indices.
    pub fn coordinate<I: IntoIterator<Item = usize>>(ambient_dim: usize, idx: I) -> Self {
        let mut s = Self::new(ambient_dim);
        for i in idx {
            s.rows.insert(i, BTreeMap::from([(i, C::one())]));
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec<C>> {
        self.rows.values()
    }

    fn reduce(&self, mut v: SparseVec<C>) -> SparseVec<C> {
        let hits: Vec<usize> = v
            .keys()
            .copied()
            .filter(|c| self.rows.contains_key(c))
            .collect();
        for col in hits {
            let Some(f) = v.get(&col).cloned() else {
                continue;
            };
            for (c, x) in &self.rows[&col] {
                let d = x.clone() * f.clone();
                let e = v.entry(*c).or_insert_with(C::zero);
                *e = e.clone() - d;
                if e.is_zero() {
                    v.remove(c);
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec<C>) -> bool {
        let v: SparseVec<C> = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        let mut v = self.reduce(v);
        let Some((&pc, lead)) = v.iter().next() else {
            return false;
        };
        let inv = C::one() / lead.clone();
        for x in v.values_mut() {
            *x = x.clone() * inv.clone();
        }
        for row in self.rows.values_mut() {
            if let Some(f) = row.get(&pc).cloned() {
                for (c, x) in &v {
                    let d = x.clone() * f.clone();
                    let e = row.entry(*c).or_insert_with(C::zero);
                    *e = e.clone() - d;
                    if e.is_zero() {
                        row.remove(c);
                    }
                }
            }
        }
        self.rows.insert(pc, std::mem::take(&mut v));
        true
    }

    pub fn contains(&self, v: &SparseVec<C>) -> bool {
        self.reduce(v.clone()).values().all(Zero::is_zero)
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for v in other.rows.values() {
            s.insert(v.clone());
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.rows.values().all(|v| other.contains(v))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    /// Intersection by the Zassenhaus method: reduce the rows `[u | u]` and
    /// `[w | 0]`; rows with vanishing left half span the intersection.
    pub fn intersection(&self, other: &Self) -> Self {
        let d = self.dim;
        let mut z = Subspace::new(2 * d);
        for u in self.rows.values() {
            let mut row = u.clone();
            for (c, x) in u {
                row.insert(c + d, x.clone());
            }
            z.insert(row);
        }
        for w in other.rows.values() {
            z.insert(w.clone());
        }
        let mut out = Subspace::new(d);
        for (&pc, row) in &z.rows {
            if pc >= d {
                out.insert(row.iter().map(|(c, x)| (c - d, x.clone())).collect());
            }
        }
        out
    }
}

/// Sign of a big integer as -1, 0 or 1.
pub fn signum(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn sv(pairs: &[(usize, i64)]) -> SparseVec<Rational> {
        pairs.iter().map(|&(i, x)| (i, q(x))).collect()
    }

    #[test]
    fn integer_kernel_is_saturated() {
        let k = integer_kernel(&[vec![2, 4]], 2);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![2, 1]);
        assert_eq!(integer_kernel(&[], 3).len(), 3);
        assert!(integer_kernel(&[vec![1, 0], vec![0, 3]], 2).is_empty());
    }

    #[test]
    fn solves_and_ranks() {
        let a = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
        assert_eq!(
            solve(&a, &[q(5), q(6)]),
            Some(vec![q(-4), Rational::new(9.into(), 2.into())])
        );
        assert_eq!(rank(&[vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        let ns = nullspace(&[vec![q(1), q(1), q(1)]], 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(v.iter().fold(q(0), |s, x| s + x), q(0));
        }
    }

    #[test]
    fn primitive_vectors() {
        let v = [
            Rational::new(1.into(), 2.into()),
            Rational::new(1.into(), 3.into()),
        ];
        assert_eq!(
            primitive_from_rational(&v),
            vec![BigInt::from(3), BigInt::from(2)]
        );
        assert_eq!(
            primitive(&[BigInt::from(4), BigInt::from(-6)]),
            vec![BigInt::from(2), BigInt::from(-3)]
        );
    }

    #[test]
    fn subspace_intersection() {
        let u = Subspace::spanned_by(3, [sv(&[(0, 1)]), sv(&[(1, 1)])]);
        let w = Subspace::spanned_by(3, [sv(&[(1, 1), (2, 1)]), sv(&[(0, 1), (2, 1)])]);
        let i = u.intersection(&w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&sv(&[(0, 1), (1, -1)])));
        assert_eq!(u.sum(&w).dim(), 3);
        assert!(!u.insert_clone_grows(sv(&[(0, 2), (1, 5)])));
    }

    impl<C: Scalar> Subspace<C> {
        fn insert_clone_grows(&self, v: SparseVec<C>) -> bool {
            self.clone().insert(v)
        }
    }
}
