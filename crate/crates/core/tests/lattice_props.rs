mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::{columns, poly};
use nfw_core::fan::compute_m;
use nfw_core::lattice::{
    dim_one_index, l_direct, m_l_count, one_index_report, p_hat_direct, Filtration,
};
use nfw_core::newton::NewtonPolyhedron;
use nfw_core::polycore::{dot, Exponent};
use nfw_core::series::{ambient_poincare, p_from_l, Window};

fn normals(r: usize, n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(1i64..=4, n), r)
}

fn exponent(n: usize) -> impl Strategy<Value = Exponent> {
    prop::collection::vec(0i64..=6, n).prop_map(Exponent::new)
}

/// `dim F_μ/F_{μ+𝟙}` by scanning a box large enough to hold every monomial
/// with some `⟨p_j, q⟩ ≤ μ_j`.
fn graded_by_scan(ps: &[Vec<i64>], mu: &[i64]) -> usize {
    let n = ps[0].len();
    let cap = mu.iter().copied().max().unwrap_or(0).max(0);
    let mut count = 0;
    let mut q = vec![0i64; n];
    loop {
        let v: Vec<i64> = ps.iter().map(|p| dot(p, &q)).collect();
        if v.iter().zip(mu).all(|(a, b)| a >= b) && v.iter().zip(mu).any(|(a, b)| a == b) {
            count += 1;
        }
        let mut i = 0;
        while i < n && q[i] == cap {
            q[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        q[i] += 1;
    }
    count
}

proptest! {
    #![proptest_config(common::config(128, 0x5eed_0401))]

    #[test]
    fn filtration_is_decreasing(ps in normals(2, 3), q in exponent(3), mu in prop::collection::vec(-2i64..=8, 2), d in prop::collection::vec(0i64..=3, 2)) {
        let f = Filtration::multi(ps).unwrap();
        let lam: Vec<i64> = mu.iter().zip(&d).map(|(a, b)| a + b).collect();
        if f.contains(&q, &lam) {
            prop_assert!(f.contains(&q, &mu));
        }
        prop_assert!(f.below(&mu).len() <= f.below(&lam).len());
    }

    #[test]
    fn filtration_is_multiplicative(ps in normals(3, 2), a in exponent(2), b in exponent(2)) {
        let f = Filtration::multi(ps.clone()).unwrap();
        let (va, vb) = (f.valuation(&a), f.valuation(&b));
        let sum = a.checked_add(&b).unwrap();
        let want: Vec<i64> = va.iter().zip(&vb).map(|(x, y)| x + y).collect();
        prop_assert_eq!(f.valuation(&sum), want.clone());
        prop_assert!(f.contains(&sum, &want));
        let offsets: Vec<i64> = ps.iter().map(|_| 1).collect();
        let g = Filtration::one_index(ps, offsets, 1).unwrap();
        prop_assert!(g.psi(&sum).unwrap() >= g.psi(&a).unwrap() + g.psi(&b).unwrap());
    }

    #[test]
    fn graded_dims_match_scan(ps in normals(2, 3), mu in prop::collection::vec(-1i64..=7, 2)) {
        let f = Filtration::multi(ps.clone()).unwrap();
        prop_assert_eq!(f.graded_dim(&mu), graded_by_scan(&ps, &mu));
    }

    #[test]
    fn psi_levels_partition_the_monomials(ps in normals(2, 2), l in 0i64..=12) {
        let offsets: Vec<i64> = ps.iter().map(|p| p.iter().sum()).collect();
        let m = compute_m(&offsets);
        let f = Filtration::one_index(ps, offsets, m).unwrap();
        let levels: usize = (0..=l).map(|k| dim_one_index(&f, k)).sum();
        prop_assert_eq!(levels, f.below(&[l]).len());
    }

    #[test]
    fn poincare_of_graded_dims_is_ambient(ps in normals(2, 2)) {
        let f = Filtration::multi(ps.clone()).unwrap();
        let l = l_direct(&f, &Window::cube(2, -7, 5));
        let p = p_from_l(&l).unwrap();
        let amb = ambient_poincare(&columns(&ps), &Window::cube(2, 0, 5)).unwrap();
        prop_assert!(p.window().contains_window(amb.window()));
        prop_assert!(p.agrees_with(&amb), "{:?}", p.first_difference(&amb));
    }
}

#[test]
fn one_index_counts_match_level_sets_on_the_corpus() {
    let mut tested = 0;
    for g in common::GERMS_2.iter().chain(common::GERMS_3) {
        let n = if common::GERMS_2.contains(g) { 2 } else { 3 };
        let d = NewtonPolyhedron::of_product(&[poly(g, n)]).unwrap();
        let (ps, nu) = (d.normals(), d.offsets());
        let m = compute_m(&nu);
        if nu.iter().any(|&x| x != m) {
            continue;
        }
        let f = Filtration::one_index(ps.clone(), nu.clone(), m).unwrap();
        let p_hat = p_hat_direct(&f, 0, 20);
        for l in 0..=20 {
            assert_eq!(
                p_hat.coefficient(&[l]).unwrap(),
                BigInt::from(m_l_count(&ps, l)),
                "{g} at {l}"
            );
        }
        tested += 1;
    }
    assert!(tested >= 4);
}

#[test]
fn diagonal_discrepancy_for_crossed_normals() {
    let rep = one_index_report(&[vec![1, 2], vec![2, 1]], &[3, 3], 3, 0, 20).unwrap();
    assert!(rep.p_hat_eq_m_counts);
    assert!(!rep.p_hat_eq_diagonal);
    assert_eq!(rep.first_diagonal_discrepancy, Some(1));
    assert_eq!(rep.p_hat[1], BigInt::from(2));
    assert_eq!(rep.diagonal[1], BigInt::from(0));
}
