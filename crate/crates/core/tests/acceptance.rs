//! Acceptance criteria, one line each. Exits nonzero only on unexpected
//! failures.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestRunner;

use common::{columns, lattice_count, poly};
use nfw_core::artin::{bar_dim, induced_dim, induced_is_intersection, quotient_total_dim};
use nfw_core::fan::{compute_m, SimplicialFan};
use nfw_core::formula::{ci_series, one_index_partials, NewtonData};
use nfw_core::hypotheses::{
    check_one_index_cone_codim, groebner, reduce, s_polynomial, Check, Limits, MonomialOrder,
    Verdict,
};
use nfw_core::lattice::{l_direct, m_l_count, one_index_report, p_hat_direct, Filtration};
use nfw_core::newton::{nu_matrix, NewtonPolyhedron};
use nfw_core::polycore::Exponent;
use nfw_core::series::{ambient_poincare, l_from_p, p_from_l, TruncatedSeries, Vanishing, Window};
use nfw_core::toric::l_toric;
use nfw_core::{Poly, Rational};

enum Outcome {
    Pass(String),
    Fail(String),
    Expected { reason: String, detail: String },
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn coeffs(s: &TruncatedSeries, lo: i64, hi: i64) -> Vec<BigInt> {
    (lo..=hi).map(|l| s.coefficient(&[l]).unwrap()).collect()
}

fn partials(f: &Poly) -> Vec<Poly> {
    (0..f.nvars())
        .map(|i| f.partial_derivative(i).unwrap())
        .collect()
}

fn one_index_hypothesis(f: &Poly) -> Verdict {
    let d = NewtonPolyhedron::of_product(std::slice::from_ref(f)).unwrap();
    check_one_index_cone_codim(
        &partials(f),
        &d,
        compute_m(&d.offsets()),
        &Limits::default(),
    )
    .verdict
}

fn induced_cusp() -> Outcome {
    let gs = [poly("z1^2 + z2^3", 2)];
    let data = NewtonData::new(&gs).unwrap();
    let filt = Filtration::multi(data.normals.clone()).unwrap();
    let w = Window::cube(1, 0, 12);
    let formula = coeffs(&ci_series(&data, &w).unwrap(), 0, 12);
    let oracle: Vec<BigInt> = (0..=12)
        .map(|l| BigInt::from(induced_dim(&filt, &[l], &gs).unwrap()))
        .collect();
    let want = ints(&[1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
    check(
        formula == oracle && oracle == want,
        format!("induced {oracle:?}"),
    )
}

fn milnor_numbers() -> Outcome {
    let mut lines = Vec::new();
    let mut unexpected = false;
    let mut expected = Vec::new();
    for (src, hi, want) in [
        ("z1^2 + z2^3", 24, 2),
        ("z1^3 + z2^4", 40, 6),
        ("z1^3 + z1*z2 + z2^3", 24, 1),
    ] {
        let f = poly(src, 2);
        let total = quotient_total_dim(&partials(&f), 40).unwrap();
        let q = one_index_partials(&f, false, 0, hi).unwrap().value_at_one();
        let ok = total == want && q.as_ref().ok() == Some(&BigInt::from(want));
        let shown = match &q {
            Ok(v) => v.to_string(),
            Err(e) => e.to_string(),
        };
        lines.push(format!("{src}: Q(1)={shown} dim={total}"));
        if !ok {
            if one_index_hypothesis(&f) == Verdict::Fail {
                expected.push(src);
            } else {
                unexpected = true;
            }
        }
    }
    let detail = lines.join("; ");
    if unexpected {
        Outcome::Fail(detail)
    } else if !expected.is_empty() {
        Outcome::Expected {
            reason: format!(
                "{} violates the one-index cone hypothesis; its Q has periodic coefficients and no value at 1",
                expected.join(", ")
            ),
            detail,
        }
    } else {
        Outcome::Pass(detail)
    }
}

fn toric_vs_lattice() -> Outcome {
    let mut ok = true;
    let mut spot = BigInt::from(0);
    for src in ["z1 + z2", "z1^2 + z2^3"] {
        let d = NewtonPolyhedron::of_product(&[poly(src, 2)]).unwrap();
        let fan = SimplicialFan::from_polyhedron(&d).unwrap();
        let w = Window::cube(d.facets().len(), 0, 8);
        let toric = l_toric(&fan, &w, 64).unwrap();
        let direct = l_direct(&Filtration::multi(d.normals()).unwrap(), &w);
        ok &= toric.agrees_with(&direct);
        if src == "z1 + z2" {
            spot = toric.coefficient(&[2]).unwrap();
        }
    }
    check(
        ok && spot == BigInt::from(3),
        format!("coefficient at 2 for z1+z2 is {spot}"),
    )
}

fn ambient_brute_force() -> Outcome {
    let ps = vec![vec![1, 2], vec![2, 1]];
    let w = Window::cube(2, 0, 10);
    let s = ambient_poincare(&columns(&ps), &w).unwrap();
    let bad = w
        .points()
        .filter(|mu| s.coefficient(mu).unwrap() != lattice_count(&ps, mu))
        .count();
    check(
        bad == 0,
        format!("{} coefficients, {bad} mismatches", w.len()),
    )
}

fn multiplier_roundtrip() -> Outcome {
    let mut tested = Vec::new();
    let mut ok = true;
    for src in common::GERMS_2 {
        let d = NewtonPolyhedron::of_product(&[poly(src, 2)]).unwrap();
        if d.facets().len() != 2 {
            continue;
        }
        let (a, b) = (0, 8);
        let l = l_direct(
            &Filtration::multi(d.normals()).unwrap(),
            &Window::cube(2, a - b - 1, b),
        );
        let p = p_from_l(&l).unwrap();
        let amb = ambient_poincare(&columns(&d.normals()), &Window::cube(2, a, b)).unwrap();
        ok &= p.window().contains_window(amb.window()) && p.agrees_with(&amb);
        tested.push(*src);
    }
    check(
        ok && !tested.is_empty(),
        format!("{} polyhedra with r = 2", tested.len()),
    )
}

fn bar_product_formula() -> Outcome {
    let cases: &[(&[&str], usize)] = &[
        (&["z1^2 + z2^3"], 2),
        (&["z1^3 + z1*z2 + z2^3"], 2),
        (&["z1^5 + z1^2*z2^2 + z2^5"], 2),
        (&["z1^2 + z2^2 + z3^2"], 3),
        (&["z1 + z2 + z3^2", "z1^2 + z2 + z3"], 3),
    ];
    let limits = Limits::default();
    let (mut used, mut points) = (0, 0);
    let mut ok = true;
    for (src, n) in cases {
        let gs: Vec<Poly> = src.iter().map(|s| poly(s, *n)).collect();
        if Check::ConeCodimStrict.run(&gs, &limits).verdict != Verdict::Pass {
            continue;
        }
        let data = NewtonData::new(&gs).unwrap();
        let r = data.normals.len();
        let d = NewtonPolyhedron::of_product(&gs).unwrap();
        let fan = SimplicialFan::from_polyhedron(&d).unwrap();
        let filt = Filtration::multi(data.normals.clone()).unwrap();
        let shift: Vec<i64> = (0..r)
            .map(|j| data.nus.iter().map(|v| v[j]).sum())
            .collect();
        let w = Window::cube(r, 0, 5);
        let lw = Window::new(
            w.lo.iter().zip(&shift).map(|(a, s)| a - s).collect(),
            w.hi.clone(),
        );
        let want = l_direct(&filt, &lw)
            .mul_factors(&data.nus)
            .unwrap()
            .restrict(&w)
            .unwrap();
        let mut any = false;
        for mu in w.points() {
            let m: Vec<i64> = mu.iter().zip(&shift).map(|(x, s)| x - s).collect();
            if !fan.h_mu(&m).is_convex() {
                continue;
            }
            ok &= BigInt::from(bar_dim(&filt, &mu, &gs, &data.nus).unwrap())
                == want.coefficient(&mu).unwrap();
            points += 1;
            any = true;
        }
        used += usize::from(any);
    }
    check(
        ok && used > 0,
        format!("{used} inputs, {points} coefficients"),
    )
}

fn intersection_filtration() -> Outcome {
    let gs = [poly("z1^3 + z1*z2 + z2^3", 2)];
    let filt = Filtration::multi(NewtonData::new(&gs).unwrap().normals).unwrap();
    let w = Window::cube(2, 0, 6);
    let bad: Vec<Vec<i64>> = w
        .points()
        .filter(|mu| !induced_is_intersection(&filt, mu, &gs).unwrap())
        .collect();
    check(
        bad.is_empty(),
        format!("{} points, failing at {bad:?}", w.len()),
    )
}

fn hypothesis_checkers() -> Outcome {
    let limits = Limits::default();
    let six = [
        "z1 + z2 + z3 + z4^2 + z5^2 + z6^2",
        "z1^2 + z2^2 + z3^2 + z4 + z5 + z6",
    ];
    let gs: Vec<Poly> = six.iter().map(|s| poly(s, 6)).collect();
    let mixed = Check::MixedFaces.run(&gs, &limits).verdict;
    let quartic = [poly("z1^4 + z1^2*z2 + z1*z2^2 + z2^4", 2)];
    let strong = Check::FacetCodimStrong.run(&quartic, &limits);
    let failing: Vec<_> = strong
        .with_verdict(Verdict::Fail)
        .filter_map(|c| c.facets.clone())
        .collect();
    check(
        mixed == Verdict::Pass && strong.verdict == Verdict::Fail,
        format!(
            "mixed-faces {mixed}, facet-codim-strong {} at {failing:?}",
            strong.verdict
        ),
    )
}

fn one_index_level_sets() -> Outcome {
    let mut ok = true;
    let mut used = 0;
    for (src, n) in common::GERMS_2
        .iter()
        .map(|g| (*g, 2))
        .chain(common::GERMS_3.iter().map(|g| (*g, 3)))
    {
        let d = NewtonPolyhedron::of_product(&[poly(src, n)]).unwrap();
        let (ps, nu) = (d.normals(), d.offsets());
        let m = compute_m(&nu);
        if nu.iter().any(|&x| x != m) {
            continue;
        }
        let p_hat = p_hat_direct(&Filtration::one_index(ps.clone(), nu, m).unwrap(), 0, 20);
        ok &= (0..=20).all(|l| p_hat.coefficient(&[l]).unwrap() == BigInt::from(m_l_count(&ps, l)));
        used += 1;
    }
    let rep = one_index_report(&[vec![1, 2], vec![2, 1]], &[3, 3], 3, 0, 20).unwrap();
    ok &= rep.p_hat_eq_m_counts;
    let diag = match rep.first_diagonal_discrepancy {
        Some(l) => format!(
            "diagonal differs first at {l}: P_hat {} vs P_l {}",
            rep.p_hat[l as usize], rep.diagonal[l as usize]
        ),
        None => "diagonal agrees".to_string(),
    };
    check(
        ok && used > 0,
        format!("{used} polyhedra; crossed normals: {diag}"),
    )
}

fn q_hat_vanishes() -> Outcome {
    let inputs = [
        ("z1^2 + z2^3", 2),
        ("z1^3 + z2^4", 2),
        ("z1^3 + z1*z2 + z2^3", 2),
        ("z1^2 + z2^3 + z3^4", 3),
    ];
    let mut ok = true;
    let mut used = Vec::new();
    for (src, n) in inputs {
        let f = poly(src, n);
        if one_index_hypothesis(&f) != Verdict::Pass {
            continue;
        }
        let s = one_index_partials(&f, false, 0, 0).unwrap();
        let top: i64 = s.rho.iter().sum();
        let s = one_index_partials(&f, false, 0, top + 24).unwrap();
        ok &= (top..=top + 24).all(|l| s.q_hat.coefficient(&[l]).unwrap() == BigInt::from(0));
        used.push(format!("{src} (vanishes from {top})"));
    }
    check(ok && !used.is_empty(), used.join(", "))
}

fn invariant_suites() -> Outcome {
    let cfg = common::config(64, 0x5eed_0b01);
    let mut failures = Vec::new();

    let germ = (
        prop::collection::btree_set(prop::collection::vec(0i64..=5, 3), 0..5),
        prop::collection::vec(1i64..=6, 3),
    )
        .prop_map(|(pts, axes)| {
            let one = Rational::from_integer(1.into());
            let mut terms: Vec<(Exponent, Rational)> = pts
                .into_iter()
                .filter(|e| e.iter().sum::<i64>() > 0)
                .map(|e| (Exponent::new(e), one.clone()))
                .collect();
            for (i, a) in axes.into_iter().enumerate() {
                let mut e = vec![0; 3];
                e[i] = a;
                terms.push((Exponent::new(e), one.clone()));
            }
            Poly::from_terms(3, terms)
        });
    let point = prop::collection::vec(0i64..=9, 3);
    let r = TestRunner::new(cfg.clone()).run(&(germ.clone(), point), |(g, q)| {
        let d = NewtonPolyhedron::of_product(std::slice::from_ref(&g)).unwrap();
        let fan = SimplicialFan::from_polyhedron(&d).unwrap();
        if q.iter().any(|&x| x != 0) {
            let q: Vec<Rational> = q
                .iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect();
            prop_assert!(!fan.cones_containing(&q).is_empty());
        }
        Ok(())
    });
    if let Err(e) = r {
        failures.push(format!("fan coverage: {e}"));
    }

    let r = TestRunner::new(cfg.clone()).run(&(germ.clone(), germ), |(a, b)| {
        let gs = [a, b];
        let d = NewtonPolyhedron::of_product(&gs).unwrap();
        let fan = SimplicialFan::from_polyhedron(&d).unwrap();
        let nu = nu_matrix(&gs, d.facets()).unwrap();
        let sum: Vec<i64> = (0..d.facets().len()).map(|j| nu[0][j] + nu[1][j]).collect();
        for mu in [&nu[0], &nu[1], &sum] {
            prop_assert!(fan.h_mu(mu).is_convex());
        }
        Ok(())
    });
    if let Err(e) = r {
        failures.push(format!("h convexity: {e}"));
    }

    let series = prop::collection::vec(-4i64..=4, 49).prop_map(|cs| {
        let mut it = cs.into_iter();
        TruncatedSeries::from_fn(
            Window::cube(2, 0, 6),
            Vanishing::AnyBelow(vec![0, 0]),
            |_| BigInt::from(it.next().unwrap()),
        )
    });
    let r = TestRunner::new(cfg.clone()).run(&series, |s| {
        prop_assert!(p_from_l(&l_from_p(&s).unwrap()).unwrap().agrees_with(&s));
        Ok(())
    });
    if let Err(e) = r {
        failures.push(format!("series roundtrip: {e}"));
    }

    let small = prop::collection::vec((prop::collection::vec(0i64..=2, 3), -2i64..=2), 1..4)
        .prop_map(|t| {
            Poly::from_terms(
                3,
                t.into_iter()
                    .map(|(e, c)| (Exponent::new(e), Rational::from_integer(c.into()))),
            )
        });
    let r = TestRunner::new(cfg).run(&prop::collection::vec(small, 1..4), |gens| {
        let ord = MonomialOrder::Grevlex;
        let limits = Limits {
            max_pairs: 2000,
            max_degree: 24,
        };
        if let Ok(basis) = groebner(&gens, ord, &limits) {
            for (i, f) in basis.iter().enumerate() {
                for g in &basis[i + 1..] {
                    prop_assert!(reduce(&s_polynomial(f, g, ord), &basis, ord).is_zero());
                }
            }
        }
        Ok(())
    });
    if let Err(e) = r {
        failures.push(format!("S-pair reduction: {e}"));
    }

    check(
        failures.is_empty(),
        if failures.is_empty() {
            "4 suites, 64 cases each".into()
        } else {
            failures.join("; ")
        },
    )
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

const CRITERIA: &[Criterion] = &[
    (
        1,
        "induced graded dims of z1^2+z2^3 equal the ci series on [0,12]",
        Duration::from_secs(1),
        induced_cusp,
    ),
    (
        2,
        "one-index Q(1) equals the quotient dimension for partials",
        Duration::from_secs(15),
        milnor_numbers,
    ),
    (
        3,
        "toric L equals lattice L on [0,8]",
        Duration::from_secs(5),
        toric_vs_lattice,
    ),
    (
        4,
        "ambient series equals the lattice count on [0,10]^2",
        Duration::from_secs(5),
        ambient_brute_force,
    ),
    (
        5,
        "P from lattice L equals the ambient series for r = 2",
        Duration::from_secs(10),
        multiplier_roundtrip,
    ),
    (
        6,
        "bar graded dims follow the product formula",
        Duration::from_secs(30),
        bar_product_formula,
    ),
    (
        7,
        "intersection filtration for the bistellar germ on [0,6]^2",
        Duration::from_secs(10),
        intersection_filtration,
    ),
    (
        8,
        "hypothesis checkers on the six-variable pair and the quartic",
        Duration::from_secs(10),
        hypothesis_checkers,
    ),
    (
        9,
        "one-index counts equal level-set counts on [0,20]",
        Duration::from_secs(10),
        one_index_level_sets,
    ),
    (
        10,
        "Q coefficients vanish from the sum of the orders",
        Duration::from_secs(10),
        q_hat_vanishes,
    ),
    (
        11,
        "invariant suites under fixed-seed property testing",
        Duration::from_secs(120),
        invariant_suites,
    ),
];

fn main() -> ExitCode {
    let mut unexpected = 0;
    for &(id, name, limit, run) in CRITERIA {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Outcome::Fail(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Outcome::Pass(d) if took > limit => {
                Outcome::Fail(format!("{d}; took {took:.2?}, limit {limit:?}"))
            }
            o => o,
        };
        let line = match outcome {
            Outcome::Pass(d) => format!("PASS  [{took:.2?}] {d}"),
            Outcome::Expected { reason, detail } => {
                format!("FAIL (expected: {reason})  [{took:.2?}] {detail}")
            }
            Outcome::Fail(d) => {
                unexpected += 1;
                format!("FAIL  [{took:.2?}] {d}")
            }
        };
        println!("criterion {id:>2} {name}: {line}");
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
