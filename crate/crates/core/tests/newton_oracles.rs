mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{affine_dim, exps, facets_bounded, facets_exhaustive, poly};
use nfw_core::newton::{initial_part_facets, is_convenient, nu_matrix, NewtonPolyhedron};
use nfw_core::polycore::{dot, Exponent};

fn support(n: usize) -> impl Strategy<Value = Vec<Exponent>> {
    prop::collection::btree_set(prop::collection::vec(0i64..=6, n), 2..9)
        .prop_map(|s| s.into_iter().map(Exponent::new).collect())
}

/// Adds a point on every coordinate axis.
fn convenient(n: usize) -> impl Strategy<Value = Vec<Exponent>> {
    (support(n), prop::collection::vec(1i64..=7, n)).prop_map(move |(mut s, axes)| {
        for (i, a) in axes.into_iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = a;
            s.push(Exponent::new(e));
        }
        s.sort();
        s.dedup();
        s
    })
}

fn facet_set(d: &NewtonPolyhedron) -> BTreeSet<(Vec<i64>, i64)> {
    d.facets()
        .iter()
        .map(|f| (f.normal.clone(), f.offset))
        .collect()
}

proptest! {
    #![proptest_config(common::config(200, 0x5eed_0101))]

    #[test]
    fn facets_match_subset_enumeration_2d(s in support(2)) {
        let d = NewtonPolyhedron::from_support(&s).unwrap();
        prop_assert_eq!(facet_set(&d), facets_exhaustive(&s));
    }

    #[test]
    fn facets_match_subset_enumeration_3d(s in convenient(3)) {
        let d = NewtonPolyhedron::from_support(&s).unwrap();
        prop_assert_eq!(facet_set(&d), facets_exhaustive(&s));
    }

    #[test]
    fn bounded_normal_search_agrees(s in convenient(3)) {
        let d = NewtonPolyhedron::from_support(&s).unwrap();
        let small: BTreeSet<_> = facet_set(&d).into_iter().filter(|(p, _)| p.iter().all(|&x| x <= 8)).collect();
        prop_assert_eq!(small, facets_bounded(&s, 8));
    }

    #[test]
    fn facets_are_primitive_supporting_and_full(s in convenient(3)) {
        let d = NewtonPolyhedron::from_support(&s).unwrap();
        for f in d.facets() {
            let g = f.normal.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            prop_assert_eq!(g, 1);
            prop_assert!(f.normal.iter().all(|&x| x > 0));
            prop_assert!(s.iter().all(|q| dot(&f.normal, q.as_slice()) >= f.offset));
            let tight: Vec<&[i64]> = s.iter().filter(|q| dot(&f.normal, q.as_slice()) == f.offset).map(|q| q.as_slice()).collect();
            prop_assert_eq!(affine_dim(&tight), 2);
        }
        for f in d.unbounded_facets() {
            prop_assert_eq!(f.normal.iter().filter(|&&x| x != 0).count(), 1);
        }
    }

    #[test]
    fn minkowski_product_polyhedron(a in convenient(2), b in convenient(2)) {
        let sum: Vec<Exponent> = a.iter().flat_map(|x| b.iter().map(move |y| x.checked_add(y).unwrap())).collect();
        let direct = NewtonPolyhedron::from_support(&sum).unwrap();
        let pa = nfw_core::Poly::from_terms(2, a.iter().map(|q| (q.clone(), nfw_core::Rational::from_integer(1.into()))));
        let pb = nfw_core::Poly::from_terms(2, b.iter().map(|q| (q.clone(), nfw_core::Rational::from_integer(2.into()))));
        let prod = NewtonPolyhedron::of_product(&[pa.clone(), pb.clone()]).unwrap();
        prop_assert_eq!(facet_set(&prod), facet_set(&direct));
        let g = &pa * &pb;
        for q in g.support() {
            prop_assert!(prod.facets().iter().all(|f| f.value(q) >= f.offset));
        }
    }

    #[test]
    fn initial_parts_select_exactly_the_tight_terms(s in convenient(2), pick in 0usize..8) {
        let g = nfw_core::Poly::from_terms(2, s.iter().enumerate().map(|(i, q)| (q.clone(), nfw_core::Rational::from_integer((i as i64 + 1).into()))));
        let d = NewtonPolyhedron::of_product(std::slice::from_ref(&g)).unwrap();
        let nu = nu_matrix(std::slice::from_ref(&g), d.facets()).unwrap();
        let r = d.facets().len();
        let j: Vec<usize> = (0..r).filter(|x| (pick >> x) & 1 == 1).collect();
        let init = initial_part_facets(&g, d.facets(), &nu[0], &j);
        for q in g.support() {
            let tight = j.iter().all(|&x| d.facets()[x].value(q) == nu[0][x]);
            prop_assert_eq!(init.support().any(|t| t == q), tight);
        }
    }
}

#[test]
fn corpus_facets() {
    let cases: &[(&str, &[(&[i64], i64)])] = &[
        ("z1^2 + z2^3", &[(&[3, 2], 6)]),
        ("z1 + z2", &[(&[1, 1], 1)]),
        ("z1^3 + z1*z2 + z2^3", &[(&[1, 2], 3), (&[2, 1], 3)]),
        (
            "z1^4 + z1^2*z2 + z1*z2^2 + z2^4",
            &[(&[1, 1], 3), (&[1, 2], 4), (&[2, 1], 4)],
        ),
    ];
    for (g, want) in cases {
        let d = NewtonPolyhedron::of_product(&[poly(g, 2)]).unwrap();
        let got: Vec<(Vec<i64>, i64)> = d
            .facets()
            .iter()
            .map(|f| (f.normal.clone(), f.offset))
            .collect();
        let want: Vec<(Vec<i64>, i64)> = want.iter().map(|(p, v)| (p.to_vec(), *v)).collect();
        assert_eq!(got, want, "{g}");
    }
    assert!(is_convenient(&[poly("z1^2 + z2^3", 2)]));
    assert!(!is_convenient(&[poly("z1^2 + z1*z2", 2)]));
    let d = NewtonPolyhedron::from_support(&exps(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])).unwrap();
    assert_eq!(facet_set(&d), [(vec![1, 1, 1], 2)].into_iter().collect());
}
