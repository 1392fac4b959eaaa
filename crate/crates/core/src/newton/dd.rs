//! Double description: extreme rays of a pointed cone `{x : A x ≥ 0}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{primitive, primitive_from_rational, rref, solve, transpose};
use crate::Rational;

/// A fixed-width bitset over constraint indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn and(&self, other: &Self) -> Self {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == *b)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| wi * 64 + b)
        })
    }
}

/// An extreme ray with the set of constraints it makes tight.
#[derive(Clone, Debug)]
pub struct Ray {
    pub vector: Vec<BigInt>,
    pub zeros: BitSet,
}

fn eval(row: &[BigInt], x: &[BigInt]) -> BigInt {
    row.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Extreme rays of `{x ∈ ℝ^d : ⟨a, x⟩ ≥ 0 for every row a}`.
///
/// The rows must have rank `d` (the cone is then pointed). Rays are
/// primitive integer vectors; zero sets refer to row indices.
pub fn extreme_rays(rows: &[Vec<BigInt>]) -> Vec<Ray> {
    let m = rows.len();
    let d = rows.first().map_or(0, Vec::len);
    let as_rat = |r: &Vec<BigInt>| -> Vec<Rational> {
        r.iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect()
    };

    // Greedy choice of d independent rows.
    let mut basis_idx: Vec<usize> = Vec::new();
    let mut acc: Vec<Vec<Rational>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if basis_idx.len() == d {
            break;
        }
        let mut trial = acc.clone();
        trial.push(as_rat(r));
        if rref(&mut trial.clone()).len() == trial.len() {
            acc = trial;
            basis_idx.push(i);
        }
    }
    assert_eq!(basis_idx.len(), d, "constraint rows must have full rank");

    // Initial cone: the columns of the inverse of the chosen rows.
    let a0 = acc;
    let mut rays: Vec<Ray> = Vec::with_capacity(d);
    for k in 0..d {
        let mut rhs = vec![Rational::zero(); d];
        rhs[k] = Rational::from_integer(1.into());
        let col = solve(&a0, &rhs).expect("basis rows are invertible");
        let v = primitive_from_rational(&col);
        let mut zeros = BitSet::new(m);
        for (j, &bi) in basis_idx.iter().enumerate() {
            if j != k {
                zeros.insert(bi);
            }
        }
        rays.push(Ray { vector: v, zeros });
    }

    let mut processed: Vec<bool> = vec![false; m];
    for &bi in &basis_idx {
        processed[bi] = true;
    }

    for (h, row) in rows.iter().enumerate() {
        if processed[h] {
            continue;
        }
        processed[h] = true;
        let vals: Vec<BigInt> = rays.iter().map(|r| eval(row, &r.vector)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let zer: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_zero()).collect();
        if neg.is_empty() {
            for &i in &zer {
                rays[i].zeros.insert(h);
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for &i in pos.iter() {
            next.push(rays[i].clone());
        }
        for &i in &zer {
            let mut r = rays[i].clone();
            r.zeros.insert(h);
            next.push(r);
        }
        for &i in &pos {
            for &j in &neg {
                let common = rays[i].zeros.and(&rays[j].zeros);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&k| k != i && k != j)
                    .all(|k| !rays[k].zeros.is_superset(&common));
                if !adjacent {
                    continue;
                }
                let a = &vals[i];
                let b = -&vals[j];
                let v: Vec<BigInt> = rays[i]
                    .vector
                    .iter()
                    .zip(&rays[j].vector)
                    .map(|(x, y)| &b * x + a * y)
                    .collect();
                let mut zeros = common;
                zeros.insert(h);
                next.push(Ray {
                    vector: primitive(&v),
                    zeros,
                });
            }
        }
        rays = next;
    }
    rays
}

/// Facets of the pointed cone generated by `gens` (rows), inside the span of
/// the generators. Each facet is returned as the sorted list of generator
/// indices lying on it.
pub fn cone_facets(gens: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let rat: Vec<Vec<Rational>> = gens
        .iter()
        .map(|g| {
            g.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    // Coordinates of every generator in a basis of the span.
    let mut ech = rat.clone();
    let pivots = rref(&mut ech);
    let dim = pivots.len();
    if dim <= 1 {
        return if dim == 1 && !gens.is_empty() {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let basis_t = transpose(&ech);
    let coords: Vec<Vec<BigInt>> = rat
        .iter()
        .map(|g| {
            let rhs: Vec<Rational> = pivots.iter().map(|&c| g[c].clone()).collect();
            let sys: Vec<Vec<Rational>> = pivots.iter().map(|&c| basis_t[c].clone()).collect();
            let x = solve(&sys, &rhs).expect("generator lies in its own span");
            primitive_from_rational(&x)
        })
        .collect();
    let rays = extreme_rays(&coords);
    let mut facets: Vec<Vec<usize>> = rays
        .into_iter()
        .map(|r| r.zeros.iter().filter(|&i| i < gens.len()).collect())
        .collect();
    facets.sort();
    facets.dedup();
    facets
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn orthant_rays() {
        let rows = vec![
            bi(&[1, 0, 0]),
            bi(&[0, 1, 0]),
            bi(&[0, 0, 1]),
            bi(&[1, 1, 1]),
        ];
        let rays = extreme_rays(&rows);
        assert_eq!(rays.len(), 3);
    }

    #[test]
    fn square_cone_facets() {
        // Cone over a square: four facets, each with two generators.
        let gens = vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]];
        let f = cone_facets(&gens);
        assert_eq!(f, vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn planar_cone_in_space() {
        let gens = vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 0]];
        assert_eq!(cone_facets(&gens), vec![vec![0], vec![2]]);
    }
}
