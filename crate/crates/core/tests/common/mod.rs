#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::test_runner::{Config, RngSeed};

use nfw_core::linalg::rank;
use nfw_core::polycore::{default_var_names, parse_polynomial, Exponent};
use nfw_core::{Poly, Rational};

/// Convenient germs used across the integration tests.
pub const GERMS_2: &[&str] = &[
    "z1^2 + z2^3",
    "z1^3 + z2^4",
    "z1^3 + z1*z2 + z2^3",
    "z1^4 + z1^2*z2 + z1*z2^2 + z2^4",
    "z1 + z2",
    "z1^5 + z1^2*z2^2 + z2^5",
    "z1^2 + z1*z2^2 + z2^6",
];

pub const GERMS_3: &[&str] = &[
    "z1^2 + z2^2 + z3^2",
    "z1^3 + z2^3 + z3^3 + z1*z2*z3",
    "z1^2 + z2^3 + z3^4",
];

pub fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn poly(s: &str, n: usize) -> Poly {
    parse_polynomial(s, &default_var_names(n)).unwrap()
}

pub fn exps(v: &[&[i64]]) -> Vec<Exponent> {
    v.iter().map(|x| Exponent::from(*x)).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Affine dimension of a finite point set.
pub fn affine_dim(pts: &[&[i64]]) -> usize {
    let Some(first) = pts.first() else { return 0 };
    let rows: Vec<Vec<Rational>> = pts[1..]
        .iter()
        .map(|q| {
            q.iter()
                .zip(first.iter())
                .map(|(a, b)| Rational::from_integer((a - b).into()))
                .collect()
        })
        .collect();
    rank(&rows)
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, x| g.gcd(x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// A candidate normal defines a compact facet of `conv(S) + ℝ₊ⁿ` when it is
/// strictly positive and its minimizing points span an affine hyperplane.
fn facet_of(support: &[Exponent], p: &[i64]) -> Option<(Vec<i64>, i64)> {
    if p.iter().any(|&x| x <= 0) {
        return None;
    }
    let n = p.len();
    let nu = support.iter().map(|q| dot(p, q.as_slice())).min()?;
    let tight: Vec<&[i64]> = support
        .iter()
        .filter(|q| dot(p, q.as_slice()) == nu)
        .map(|q| q.as_slice())
        .collect();
    (affine_dim(&tight) + 1 == n).then(|| (p.to_vec(), nu))
}

/// Compact facets by enumerating all `n`-subsets of the support and solving
/// for the hyperplane through them.
pub fn facets_exhaustive(support: &[Exponent]) -> BTreeSet<(Vec<i64>, i64)> {
    let n = support[0].len();
    let mut out = BTreeSet::new();
    let m = support.len();
    if m < n {
        return out;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let base = support[idx[0]].as_slice();
        let rows: Vec<Vec<Rational>> = idx[1..]
            .iter()
            .map(|&i| {
                support[i]
                    .as_slice()
                    .iter()
                    .zip(base)
                    .map(|(a, b)| Rational::from_integer((a - b).into()))
                    .collect()
            })
            .collect();
        let ns = nfw_core::linalg::nullspace(&rows, n);
        if ns.len() == 1 {
            let w = nfw_core::linalg::primitive_from_rational(&ns[0]);
            let w: Vec<i64> = w.iter().map(|x| i64::try_from(x).unwrap()).collect();
            for cand in [w.clone(), w.iter().map(|x| -x).collect()] {
                if let Some(f) = facet_of(support, &primitive(&cand)) {
                    out.insert(f);
                }
            }
        }
        // Next combination.
        let mut k = n;
        while k > 0 && idx[k - 1] == m - n + k - 1 {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        idx[k - 1] += 1;
        for t in k..n {
            idx[t] = idx[t - 1] + 1;
        }
    }
    out
}

/// Compact facets among all primitive normals with entries in `1..=bound`.
pub fn facets_bounded(support: &[Exponent], bound: i64) -> BTreeSet<(Vec<i64>, i64)> {
    let n = support[0].len();
    let mut out = BTreeSet::new();
    let mut p = vec![1i64; n];
    loop {
        if p.iter().fold(0i64, |g, x| g.gcd(x)) == 1 {
            if let Some(f) = facet_of(support, &p) {
                out.insert(f);
            }
        }
        let mut i = 0;
        while i < n && p[i] == bound {
            p[i] = 1;
            i += 1;
        }
        if i == n {
            break;
        }
        p[i] += 1;
    }
    out
}

/// `#{q ∈ ℕⁿ : ⟨p_j, q⟩ = μ_j ∀j}` by scanning a box.
pub fn lattice_count(normals: &[Vec<i64>], mu: &[i64]) -> BigInt {
    let n = normals[0].len();
    if mu.iter().any(|&m| m < 0) {
        return BigInt::from(0);
    }
    let cap: Vec<i64> = (0..n)
        .map(|i| normals.iter().zip(mu).map(|(p, m)| m / p[i]).min().unwrap())
        .collect();
    let mut q = vec![0i64; n];
    let mut count = 0u64;
    loop {
        if normals.iter().zip(mu).all(|(p, m)| dot(p, &q) == *m) {
            count += 1;
        }
        let mut i = 0;
        while i < n && q[i] == cap[i] {
            q[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        q[i] += 1;
    }
    BigInt::from(count)
}

/// Columns `p^l = (p_{1l}, …, p_{rl})` of a normal matrix.
pub fn columns(normals: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..normals[0].len())
        .map(|i| normals.iter().map(|p| p[i]).collect())
        .collect()
}
