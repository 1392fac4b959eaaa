use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use nfw_core::artin::{bar_dim, induced_dim, intersection_dim, quotient_total_dim};
use nfw_core::fan::{compute_m, compute_m_minimal, SimplicialFan};
use nfw_core::formula::{ambient_series, ci_series, one_index_partials, NewtonData};
use nfw_core::hypotheses::{check_one_index_cone_codim, Check, HypothesisReport, Limits, Verdict};
use nfw_core::lattice::{l_direct, m_l_count, p_hat_direct, Filtration};
use nfw_core::newton::{
    edge_sets_equal, is_convenient, mixed_faces_condition, nu_matrix, sum_dims_condition,
    NewtonPolyhedron, Polytope,
};
use nfw_core::series::{p_from_l, TruncatedSeries, Vanishing, Window};
use nfw_core::toric::{l_toric, NerveTable};
use nfw_core::Poly;

use crate::problem::{Mode, Problem};

/// Box radius for the toric lattice-point sums.
const TORIC_RADIUS: i64 = 64;
/// Truncation depth for the local quotient dimension.
const QUOTIENT_DEPTH: i64 = 48;

pub const SERIES: [&str; 5] = ["ambient", "ci", "lattice-L", "toric-L", "one-index"];
pub const ONE_INDEX_CHECK: &str = "one-index-cone-codim";

#[derive(Debug, Clone)]
pub struct Options {
    pub window: (i64, i64),
    pub minimal_m: bool,
    pub fan_dump: Option<std::path::PathBuf>,
    pub checks: Option<Vec<String>>,
    pub series: Option<Vec<String>>,
    pub limits: Limits,
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Compute(String),
}

fn compute<E: std::fmt::Display>(e: E) -> CommandError {
    CommandError::Compute(e.to_string())
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub results: Map<String, Value>,
    pub warnings: Vec<String>,
    pub exit: i32,
}

fn int(c: &BigInt) -> Value {
    c.to_i64()
        .map_or_else(|| Value::String(c.to_string()), Value::from)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Germ-mode context shared by the series and verify commands. In partials
/// mode the polyhedron is that of `f` and the generators are its partials.
struct Germ {
    limits: Limits,
    gens: Vec<Poly>,
    delta: NewtonPolyhedron,
    data: NewtonData,
}

impl Germ {
    fn new(problem: &Problem, limits: Limits) -> Result<Self, CommandError> {
        if problem.mode == Mode::Laurent {
            return Err(CommandError::Input(
                "this command needs mode germ or partials".into(),
            ));
        }
        let gens = problem.generators().map_err(CommandError::Compute)?;
        let delta = match problem.f() {
            Some(f) => NewtonPolyhedron::of_product(std::slice::from_ref(f)),
            None => NewtonPolyhedron::of_product(&gens),
        }
        .map_err(compute)?;
        let data = NewtonData {
            normals: delta.normals(),
            offsets: delta.offsets(),
            nus: nu_matrix(&gens, delta.facets()).map_err(compute)?,
        };
        Ok(Germ {
            limits,
            gens,
            delta,
            data,
        })
    }

    fn r(&self) -> usize {
        self.data.normals.len()
    }

    fn filtration(&self) -> Filtration {
        Filtration::multi(self.data.normals.clone()).expect("normals are nonempty")
    }

    fn fan(&self) -> Result<SimplicialFan, CommandError> {
        SimplicialFan::from_polyhedron(&self.delta).map_err(compute)
    }

    fn check(&self, c: Check) -> HypothesisReport {
        c.run_on(&self.gens, &self.delta, &self.limits)
    }
}

fn one_index_check(problem: &Problem, opts: &Options) -> Option<HypothesisReport> {
    let f = problem.f()?;
    let d = NewtonPolyhedron::of_product(std::slice::from_ref(f)).ok()?;
    let m = if opts.minimal_m {
        compute_m_minimal(&d.normals(), &d.offsets())
    } else {
        compute_m(&d.offsets())
    };
    let gens = problem.generators().ok()?;
    Some(check_one_index_cone_codim(&gens, &d, m, &opts.limits))
}

fn hypothesis_json(reports: &[&HypothesisReport]) -> Value {
    Value::Array(
        reports
            .iter()
            .map(|r| json!({"name": r.name, "verdict": r.verdict}))
            .collect(),
    )
}

fn write_fan_dump(
    path: &Path,
    germ: &Germ,
    window: (i64, i64),
    warnings: &mut Vec<String>,
) -> Result<(), CommandError> {
    let fan = match germ.fan() {
        Ok(f) => f,
        Err(e) => {
            warnings.push(format!("fan-dump skipped: {e}"));
            return Ok(());
        }
    };
    let text = if path.extension().is_some_and(|e| e == "csv") {
        let table = NerveTable::new(&fan).map_err(compute)?;
        let mut out = String::new();
        for (k, mu) in Window::cube(germ.r(), window.0, window.1)
            .points()
            .enumerate()
        {
            let csv = table.n_ij(&mu, TORIC_RADIUS).map_err(compute)?.to_csv();
            out.push_str(if k == 0 {
                &csv
            } else {
                csv.split_once('\n').map_or("", |(_, rest)| rest)
            });
        }
        out
    } else {
        serde_json::to_string_pretty(&fan.to_json()).expect("fan json") + "\n"
    };
    fs::write(path, text)
        .map_err(|e| CommandError::Input(format!("cannot write {}: {e}", path.display())))
}

pub fn polyhedron(problem: &Problem, opts: &Options) -> Result<Outcome, CommandError> {
    let mut out = Outcome::default();
    let gens = problem.generators().map_err(CommandError::Compute)?;
    if problem.mode == Mode::Laurent {
        let polys: Vec<Polytope> = gens
            .iter()
            .map(|g| Polytope::new(g.support()).map_err(compute))
            .collect::<Result<_, _>>()?;
        let list: Vec<Value> = problem
            .polys
            .iter()
            .zip(&polys)
            .map(|((name, _), p)| {
                json!({
                    "name": name,
                    "dim": p.dim(),
                    "full": p.is_full(),
                    "points": p.points().iter().map(|e| e.as_slice().to_vec()).collect::<Vec<_>>(),
                    "facet_normals": p.facet_normals().iter().map(|v| v.iter().map(int).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            })
            .collect();
        out.results.insert("polytopes".into(), Value::Array(list));
        out.results
            .insert("full".into(), json!(polys.iter().all(Polytope::is_full)));
        out.results
            .insert("edges_equal".into(), json!(edge_sets_equal(&polys)));
        if polys.len() == 2 {
            out.results.insert(
                "mixed_faces".into(),
                json!(mixed_faces_condition(&polys).map_err(compute)?),
            );
        }
        out.results.insert(
            "sum_dims".into(),
            json!(sum_dims_condition(&polys).map_err(compute)?),
        );
        if opts.fan_dump.is_some() {
            out.warnings
                .push("fan-dump needs mode germ or partials".into());
        }
        return Ok(out);
    }

    out.results.insert("vars".into(), json!(problem.vars));
    out.results
        .insert("mode".into(), json!(problem.mode.name()));
    let germ = Germ::new(problem, opts.limits)?;
    let d = &germ.delta;
    let facets: Vec<Value> = d
        .facets()
        .iter()
        .map(|f| json!({"normal": f.normal, "offset": f.offset}))
        .collect();
    out.results.insert("facets".into(), Value::Array(facets));
    out.results.insert("nu_matrix".into(), json!(germ.data.nus));
    out.results
        .insert("M".into(), json!(compute_m(&d.offsets())));
    out.results.insert(
        "M_minimal".into(),
        json!(compute_m_minimal(&d.normals(), &d.offsets())),
    );
    let convenient = match problem.f() {
        Some(f) => is_convenient(std::slice::from_ref(f)),
        None => is_convenient(&germ.gens),
    };
    out.results.insert("convenient".into(), json!(convenient));
    out.results
        .insert("bistellar".into(), json!(d.is_bistellar()));
    out.results.insert("full".into(), json!(d.is_full()));
    if !convenient {
        out.warnings.push("not convenient: some coordinate axis misses the support; the fan and the series formulas do not apply".into());
    }
    if let Some(path) = &opts.fan_dump {
        write_fan_dump(path, &germ, opts.window, &mut out.warnings)?;
    }
    Ok(out)
}

fn series_entry(
    formula: &str,
    s: &TruncatedSeries,
    hypotheses: &[&HypothesisReport],
    warnings: &mut Vec<String>,
    which: &str,
) -> Value {
    let verified = hypotheses.iter().all(|h| h.verdict == Verdict::Pass);
    if !verified {
        let failing: Vec<String> = hypotheses
            .iter()
            .filter(|h| h.verdict != Verdict::Pass)
            .map(|h| format!("{} {}", h.name, h.verdict))
            .collect();
        warnings.push(format!(
            "{which}: unverified hypothesis ({})",
            failing.join(", ")
        ));
    }
    json!({
        "formula": formula,
        "hypotheses": hypothesis_json(hypotheses),
        "unverified_hypothesis": !verified,
        "series": to_value(s),
    })
}

pub fn series(problem: &Problem, opts: &Options) -> Result<Outcome, CommandError> {
    let mut out = Outcome::default();
    let germ = Germ::new(problem, opts.limits)?;
    let r = germ.r();
    let (lo, hi) = opts.window;
    let w = Window::cube(r, lo, hi);
    let default: Vec<String> = SERIES
        .iter()
        .filter(|s| **s != "one-index" || problem.mode == Mode::Partials)
        .map(|s| s.to_string())
        .collect();
    let which = opts.series.clone().unwrap_or(default);
    for name in &which {
        if !SERIES.contains(&name.as_str()) {
            return Err(CommandError::Input(format!(
                "unknown series {name:?}; expected one of {}",
                SERIES.join(", ")
            )));
        }
    }
    for name in &which {
        let entry = match name.as_str() {
            "ambient" => {
                let s = ambient_series(&germ.data, &w).map_err(compute)?;
                series_entry("prod_l 1/(1 - t^(p^l))", &s, &[], &mut out.warnings, name)
            }
            "ci" => {
                let s = ci_series(&germ.data, &w).map_err(compute)?;
                let h = germ.check(Check::FacetCodim);
                series_entry(
                    "prod_i (1 - t^(nu_i)) * prod_l 1/(1 - t^(p^l))",
                    &s,
                    &[&h],
                    &mut out.warnings,
                    name,
                )
            }
            "lattice-L" => {
                let s = l_direct(&germ.filtration(), &w);
                series_entry(
                    "sum_mu dim F_mu/F_(mu+1) t^mu",
                    &s,
                    &[],
                    &mut out.warnings,
                    name,
                )
            }
            "toric-L" => {
                let fan = germ.fan()?;
                let s = l_toric(&fan, &w, TORIC_RADIUS).map_err(compute)?;
                let outside: Vec<Vec<i64>> =
                    w.points().filter(|mu| !convex_pair(&fan, mu)).collect();
                let mut e = series_entry(
                    "sum_(I,J) n_(I,J,mu) (chi_I - chi_J) t^mu",
                    &s,
                    &[],
                    &mut out.warnings,
                    name,
                );
                if !outside.is_empty() {
                    out.warnings.push(format!("toric-L: h_mu or h_(mu+1) not convex at {} window points; those coefficients are Euler characteristics only", outside.len()));
                    e["unverified_hypothesis"] = json!(true);
                }
                e["nonconvex_points"] = json!(outside);
                e
            }
            "one-index" => {
                let f = problem.f().ok_or_else(|| {
                    CommandError::Input("series one-index needs mode partials".into())
                })?;
                let s = one_index_partials(f, opts.minimal_m, lo, hi).map_err(compute)?;
                let h = one_index_check(problem, opts).expect("partials mode");
                let mut e = series_entry(
                    "Q = prod_i (1 - tau^(rho_i)) * P_hat",
                    &s.q_hat,
                    &[&h],
                    &mut out.warnings,
                    name,
                );
                e["M"] = json!(s.m);
                e["rho"] = json!(s.rho);
                e["p_hat"] = to_value(&s.p_hat);
                e["value_at_one"] = s.value_at_one().map_or(Value::Null, |v| int(&v));
                e
            }
            _ => unreachable!("validated above"),
        };
        out.results.insert(name.clone(), entry);
    }
    if let Some(path) = &opts.fan_dump {
        write_fan_dump(path, &germ, opts.window, &mut out.warnings)?;
    }
    Ok(out)
}

fn convex_pair(fan: &SimplicialFan, mu: &[i64]) -> bool {
    let mu1: Vec<i64> = mu.iter().map(|m| m + 1).collect();
    fan.h_mu(mu).is_convex() && fan.h_mu(&mu1).is_convex()
}

pub fn check(problem: &Problem, opts: &Options) -> Result<Outcome, CommandError> {
    let mut out = Outcome::default();
    let names = opts.checks.clone().unwrap_or_else(|| {
        let mut v: Vec<String> = Check::ALL
            .iter()
            .filter(|c| c.is_polytope_check() == (problem.mode == Mode::Laurent))
            .map(|c| c.name().to_string())
            .collect();
        if problem.mode == Mode::Partials {
            v.push(ONE_INDEX_CHECK.into());
        }
        v
    });
    let gens = problem.generators().map_err(CommandError::Compute)?;
    let f_delta = match problem.f() {
        Some(f) => Some(NewtonPolyhedron::of_product(std::slice::from_ref(f)).map_err(compute)?),
        None => None,
    };
    let mut reports = Vec::new();
    for name in &names {
        let report = if name == ONE_INDEX_CHECK {
            one_index_check(problem, opts).ok_or_else(|| {
                CommandError::Input(format!("{ONE_INDEX_CHECK} needs mode partials"))
            })?
        } else {
            let c = Check::from_name(name).ok_or_else(|| {
                let known: Vec<&str> = Check::ALL
                    .iter()
                    .map(|c| c.name())
                    .chain([ONE_INDEX_CHECK])
                    .collect();
                CommandError::Input(format!(
                    "unknown check {name:?}; expected one of {}",
                    known.join(", ")
                ))
            })?;
            match &f_delta {
                Some(d) => c.run_on(&gens, d, &opts.limits),
                None => c.run(&gens, &opts.limits),
            }
        };
        reports.push(report);
    }
    let verdict = reports
        .iter()
        .map(|r| r.verdict)
        .max()
        .unwrap_or(Verdict::Pass);
    out.exit = match verdict {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 3,
    };
    out.results.insert("verdict".into(), to_value(&verdict));
    out.results.insert("reports".into(), to_value(&reports));
    Ok(out)
}

/// One formula-versus-oracle comparison.
struct Identity {
    name: &'static str,
    left: (&'static str, TruncatedSeries),
    right: (&'static str, TruncatedSeries),
    hypotheses: Vec<HypothesisReport>,
    /// Points actually compared; `None` means the whole window.
    points: Option<Vec<Vec<i64>>>,
}

impl Identity {
    fn counted(&self) -> bool {
        self.hypotheses.iter().all(|h| h.verdict == Verdict::Pass)
    }

    fn first_difference(&self) -> Option<(Vec<i64>, BigInt, BigInt)> {
        match &self.points {
            None => self.left.1.first_difference(&self.right.1),
            Some(pts) => pts.iter().find_map(|mu| {
                let (a, b) = (
                    self.left.1.coefficient(mu).ok()?,
                    self.right.1.coefficient(mu).ok()?,
                );
                (a != b).then(|| (mu.clone(), a, b))
            }),
        }
    }

    fn to_json(&self) -> (bool, Value) {
        let diff = self.first_difference();
        let equal = diff.is_none();
        let mut v = json!({
            "name": self.name,
            "hypotheses": hypothesis_json(&self.hypotheses.iter().collect::<Vec<_>>()),
            "counted": self.counted(),
            "window": to_value(self.left.1.window()),
            "left": {"source": self.left.0, "series": to_value(&self.left.1)},
            "right": {"source": self.right.0, "series": to_value(&self.right.1)},
            "equal": equal,
            "first_difference": diff.map(|(mu, a, b)| json!({"mu": mu, "left": int(&a), "right": int(&b)})),
        });
        if let Some(p) = &self.points {
            v["compared_points"] = json!(p.len());
        }
        (equal, v)
    }
}

fn graded(
    window: &Window,
    mut dim: impl FnMut(&[i64]) -> Result<usize, CommandError>,
) -> Result<TruncatedSeries, CommandError> {
    let mut err = None;
    let s = TruncatedSeries::from_fn(
        window.clone(),
        Vanishing::AllBelow(vec![0; window.arity()]),
        |mu| match dim(mu) {
            Ok(d) => BigInt::from(d),
            Err(e) => {
                err.get_or_insert(e);
                BigInt::from(0)
            }
        },
    );
    err.map_or(Ok(s), Err)
}

/// Caps the upper bound for oracles whose cost grows like `hi^r`.
fn capped(
    name: &str,
    r: usize,
    (lo, hi): (i64, i64),
    caps: [i64; 3],
    warnings: &mut Vec<String>,
) -> (i64, i64) {
    let cap = caps[r.clamp(1, 3) - 1];
    if hi > cap {
        let hi2 = cap.max(lo);
        warnings.push(format!(
            "verify {name}: window reduced to {lo}..{hi2} for r = {r}"
        ));
        (lo, hi2)
    } else {
        (lo, hi)
    }
}

fn reduced_ambient(germ: &Germ, w: &Window) -> Result<TruncatedSeries, CommandError> {
    let shift: Vec<i64> = (0..germ.r())
        .map(|j| germ.data.nus.iter().map(|v| v[j]).sum())
        .collect();
    let lw = Window::new(
        w.lo.iter().zip(&shift).map(|(a, s)| a - s).collect(),
        w.hi.clone(),
    );
    l_direct(&germ.filtration(), &lw)
        .mul_factors(&germ.data.nus)
        .and_then(|s| s.restrict(w))
        .map_err(compute)
}

pub fn verify(problem: &Problem, opts: &Options) -> Result<Outcome, CommandError> {
    let mut out = Outcome::default();
    let germ = Germ::new(problem, opts.limits)?;
    let r = germ.r();
    let filt = germ.filtration();
    let gens = &germ.gens;
    let nus = &germ.data.nus;
    let mut ids: Vec<Identity> = Vec::new();

    let (lo, hi) = capped(
        "ci-induced",
        r,
        opts.window,
        [i64::MAX, 4, 3],
        &mut out.warnings,
    );
    let lw = Window::cube(r, lo - hi - 1, hi);
    let induced = graded(&lw, |mu| induced_dim(&filt, mu, gens).map_err(compute))?;
    let p = p_from_l(&induced)
        .and_then(|p| p.restrict(&Window::cube(r, lo, hi)))
        .map_err(compute)?;
    ids.push(Identity {
        name: "ci-induced",
        left: ("quotient-ring graded dims of the induced filtration", p),
        right: (
            "product formula",
            ci_series(&germ.data, &Window::cube(r, lo, hi)).map_err(compute)?,
        ),
        hypotheses: vec![germ.check(Check::FacetCodim)],
        points: None,
    });

    let (lo, hi) = capped(
        "bar-product",
        r,
        opts.window,
        [i64::MAX, 6, 3],
        &mut out.warnings,
    );
    let w = Window::cube(r, lo, hi);
    let fan = germ.fan().ok();
    if let Some(fan) = &fan {
        let shift: Vec<i64> = (0..r).map(|j| nus.iter().map(|v| v[j]).sum()).collect();
        let pts: Vec<Vec<i64>> = w
            .points()
            .filter(|mu| {
                let m: Vec<i64> = mu.iter().zip(&shift).map(|(x, s)| x - s).collect();
                fan.h_mu(&m).is_convex()
            })
            .collect();
        let bar = graded(&w, |mu| {
            if pts.iter().any(|p| p == mu) {
                bar_dim(&filt, mu, gens, nus).map_err(compute)
            } else {
                Ok(0)
            }
        })?;
        ids.push(Identity {
            name: "bar-product",
            left: ("quotient-ring graded dims of the bar filtration", bar),
            right: ("prod_i (1 - t^(nu_i)) * L_O", reduced_ambient(&germ, &w)?),
            hypotheses: vec![germ.check(Check::ConeCodimStrict)],
            points: Some(pts),
        });
    }

    if germ.delta.is_bistellar() {
        let (lo, hi) = capped(
            "intersection",
            r,
            opts.window,
            [i64::MAX, 6, 3],
            &mut out.warnings,
        );
        let w = Window::cube(r, lo, hi);
        ids.push(Identity {
            name: "intersection",
            left: (
                "intersection filtration graded dims",
                graded(&w, |mu| intersection_dim(&filt, mu, gens).map_err(compute))?,
            ),
            right: (
                "induced filtration graded dims",
                graded(&w, |mu| induced_dim(&filt, mu, gens).map_err(compute))?,
            ),
            hypotheses: vec![germ.check(Check::FacetCodim)],
            points: None,
        });
    }

    if let Some(fan) = &fan {
        let (lo, hi) = capped("toric", r, opts.window, [i64::MAX, 6, 3], &mut out.warnings);
        let w = Window::cube(r, lo, hi);
        let pts: Vec<Vec<i64>> = w.points().filter(|mu| convex_pair(fan, mu)).collect();
        ids.push(Identity {
            name: "toric",
            left: (
                "toric Euler characteristic sum",
                l_toric(fan, &w, TORIC_RADIUS).map_err(compute)?,
            ),
            right: ("lattice graded dims", l_direct(&filt, &w)),
            hypotheses: vec![],
            points: Some(pts),
        });
    }

    let (lo, hi) = capped(
        "ambient",
        r,
        opts.window,
        [i64::MAX, 12, 6],
        &mut out.warnings,
    );
    let lw = Window::cube(r, lo - hi - 1, hi);
    let w = Window::cube(r, lo, hi);
    ids.push(Identity {
        name: "ambient",
        left: (
            "P from lattice L",
            p_from_l(&l_direct(&filt, &lw))
                .and_then(|p| p.restrict(&w))
                .map_err(compute)?,
        ),
        right: (
            "prod_l 1/(1 - t^(p^l))",
            ambient_series(&germ.data, &w).map_err(compute)?,
        ),
        hypotheses: vec![],
        points: None,
    });

    let offsets = germ.delta.offsets();
    let m = compute_m(&offsets);
    if offsets.iter().all(|&x| x == m) {
        let (lo, hi) = (opts.window.0.max(0), opts.window.1.max(0));
        let normals = germ.delta.normals();
        let one = Filtration::one_index(normals.clone(), offsets.clone(), m).map_err(compute)?;
        let counts =
            TruncatedSeries::from_fn(Window::cube(1, lo, hi), Vanishing::AllBelow(vec![0]), |l| {
                BigInt::from(m_l_count(&normals, l[0]))
            });
        ids.push(Identity {
            name: "level-sets",
            left: ("psi-level counts", p_hat_direct(&one, lo, hi)),
            right: ("#(M_l minus M_(l+1))", counts),
            hypotheses: vec![],
            points: None,
        });
    }

    let mut results = Vec::new();
    let mut all = true;
    for id in &ids {
        let (equal, v) = id.to_json();
        if !equal && !id.counted() {
            out.warnings.push(format!(
                "{}: identity fails where its hypothesis does not hold",
                id.name
            ));
        }
        all &= equal || !id.counted();
        results.push(v);
    }

    if let Some(f) = problem.f() {
        let h = one_index_check(problem, opts).expect("partials mode");
        let s = one_index_partials(f, opts.minimal_m, 0, 0).map_err(compute)?;
        let top: i64 = s.rho.iter().sum();
        let s = one_index_partials(f, opts.minimal_m, 0, top + s.m.max(1) + 4).map_err(compute)?;
        let left = s.value_at_one();
        let right = quotient_total_dim(gens, QUOTIENT_DEPTH).map_err(compute)?;
        let equal = left.as_ref().ok() == Some(&BigInt::from(right));
        let counted = h.verdict == Verdict::Pass;
        if !equal && !counted {
            out.warnings
                .push("one-index-value: identity fails where its hypothesis does not hold".into());
        }
        all &= equal || !counted;
        results.push(json!({
            "name": "one-index-value",
            "hypotheses": hypothesis_json(&[&h]),
            "counted": counted,
            "left": {"source": "Q(1) from the one-index series", "value": left.as_ref().map_or(Value::Null, int), "error": left.as_ref().err().map(|e| e.to_string())},
            "right": {"source": "local quotient dimension", "value": right},
            "equal": equal,
        }));
    }

    out.results
        .insert("identities".into(), Value::Array(results));
    out.results.insert("all_hold".into(), json!(all));
    out.exit = if all { 0 } else { 1 };
    if let Some(path) = &opts.fan_dump {
        write_fan_dump(path, &germ, opts.window, &mut out.warnings)?;
    }
    Ok(out)
}
