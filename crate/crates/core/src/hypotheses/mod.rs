//! Machine checks of the codimension, nondegeneracy and polytope conditions
//! under which the series formulas hold.
//!
//! Conditions on germs at the origin are decided through the global affine
//! variety of the initial system. Initial parts along a compact facet are
//! quasi-homogeneous for a strictly positive weight, so their common zero
//! set is a weighted cone: every component passes through the origin and the
//! germ dimension equals the global one. Both PASS and FAIL are therefore
//! sound for these systems; INCONCLUSIVE is reserved for resource caps and
//! systems without such a weight. Conditions on the torus are global and
//! decided exactly.

pub mod groebner;

use std::fmt;

use serde::Serialize;

pub use groebner::{
    dimension_from_leading, groebner, ideal_dim_affine, ideal_dim_torus, reduce, s_polynomial,
    GroebnerError, Limits, MonomialOrder, SortedPoly,
};

use crate::fan::SimplicialFan;
use crate::lattice::Filtration;
use crate::newton::{
    edge_sets_equal, initial_part_cone, initial_part_facets, mixed_faces_condition, nu_matrix,
    sum_dims_condition, NewtonPolyhedron, Polytope,
};
use crate::polycore::{dot, Polynomial};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub nvars: usize,
    pub affine: i64,
    pub torus: i64,
}

pub fn dimension_report<C: Scalar>(
    gens: &[Polynomial<C>],
    nvars: usize,
    limits: &Limits,
) -> Result<DimensionReport, GroebnerError> {
    Ok(DimensionReport {
        nvars,
        affine: ideal_dim_affine(gens, nvars, limits)?,
        torus: ideal_dim_torus(gens, nvars, limits)?,
    })
}

/// One tested instance of a condition. Index lists are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Case {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<i64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Case {
    fn new(label: impl Into<String>, verdict: Verdict) -> Self {
        Case {
            label: label.into(),
            facets: None,
            coordinates: None,
            bound: None,
            dimension: None,
            verdict,
            witness: Vec::new(),
            note: None,
        }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.note = Some(s.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub name: String,
    pub verdict: Verdict,
    pub cases: Vec<Case>,
}

impl HypothesisReport {
    fn new(name: &str, cases: Vec<Case>) -> Self {
        let verdict = cases
            .iter()
            .map(|c| c.verdict)
            .max()
            .unwrap_or(Verdict::Pass);
        HypothesisReport {
            name: name.to_string(),
            verdict,
            cases,
        }
    }

    /// Cases with the given verdict.
    pub fn with_verdict(&self, v: Verdict) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(move |c| c.verdict == v)
    }
}

/// The available checks, by CLI name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `in_J g_1, …, in_J g_k` have codimension `≥ k − s + 1` at 0 for every
    /// set `J` of `s ≥ 1` compact facets.
    FacetCodim,
    /// The same with bound `k − s`.
    FacetCodimWeak,
    /// The same with bound `k − s + 2`, for `s ≥ 2`.
    FacetCodimStrong,
    /// `in_σ g_i` have torus codimension `≥ k − l − s` for every cone `σ`
    /// with `l` coordinate and `s ≥ 1` facet generators.
    ConeCodim,
    /// The same with bound `k − l − s + 1`.
    ConeCodimStrict,
    /// `in_σ g_i` cut out a smooth torus subvariety of codimension `k` (or
    /// nothing) for every cone with `s ≥ 1`.
    Nondegenerate,
    /// Every Newton polytope is full-dimensional.
    Full,
    /// All Newton polytopes have the same edge directions.
    Edges,
    /// For `k = 2`: along every facet of `Δ_1 + Δ_2`, a facet of one summand
    /// meets a face of dimension `≥ 2` of the other.
    MixedFaces,
    /// `dim(Δ_1 + … + Δ_j) = dim Δ_j` and `dim Δ_j > j`.
    SumDims,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::FacetCodim,
        Check::FacetCodimWeak,
        Check::FacetCodimStrong,
        Check::ConeCodim,
        Check::ConeCodimStrict,
        Check::Nondegenerate,
        Check::Full,
        Check::Edges,
        Check::MixedFaces,
        Check::SumDims,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::FacetCodim => "facet-codim",
            Check::FacetCodimWeak => "facet-codim-weak",
            Check::FacetCodimStrong => "facet-codim-strong",
            Check::ConeCodim => "cone-codim",
            Check::ConeCodimStrict => "cone-codim-strict",
            Check::Nondegenerate => "nondegenerate",
            Check::Full => "full",
            Check::Edges => "edges",
            Check::MixedFaces => "mixed-faces",
            Check::SumDims => "sum-dims",
        }
    }

    pub fn from_name(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Whether the check concerns Newton polytopes of Laurent polynomials
    /// rather than the Newton polyhedron of a germ.
    pub fn is_polytope_check(self) -> bool {
        matches!(
            self,
            Check::Full | Check::Edges | Check::MixedFaces | Check::SumDims
        )
    }

    pub fn run<C: Scalar>(self, gs: &[Polynomial<C>], limits: &Limits) -> HypothesisReport {
        match self {
            Check::FacetCodim => check_facet_codim(gs, limits),
            Check::FacetCodimWeak => check_facet_codim_weak(gs, limits),
            Check::FacetCodimStrong => check_facet_codim_strong(gs, limits),
            Check::ConeCodim => check_cone_codim(gs, limits),
            Check::ConeCodimStrict => check_cone_codim_strict(gs, limits),
            Check::Nondegenerate => check_nondegenerate(gs, limits),
            Check::Full => check_full(gs),
            Check::Edges => check_edges(gs),
            Check::MixedFaces => check_mixed_faces(gs),
            Check::SumDims => check_sum_dims(gs),
        }
    }

    /// Like [`Check::run`], with initial parts taken along the facets of
    /// `delta` instead of those of `Δ(g_1⋯g_k)`. Polytope checks ignore
    /// `delta`.
    pub fn run_on<C: Scalar>(
        self,
        gs: &[Polynomial<C>],
        delta: &NewtonPolyhedron,
        limits: &Limits,
    ) -> HypothesisReport {
        let d = Some(delta);
        match self {
            Check::FacetCodim => facet_check(self.name(), gs, d, 1, 1, limits),
            Check::FacetCodimWeak => facet_check(self.name(), gs, d, 1, 0, limits),
            Check::FacetCodimStrong => facet_check(self.name(), gs, d, 2, 2, limits),
            Check::ConeCodim => cone_check(self.name(), gs, d, 0, limits),
            Check::ConeCodimStrict => cone_check(self.name(), gs, d, 1, limits),
            Check::Nondegenerate => nondegenerate(gs, d, limits),
            _ => self.run(gs, limits),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

struct GermData<C> {
    n: usize,
    gs: Vec<Polynomial<C>>,
    delta: NewtonPolyhedron,
    nu: Vec<Vec<i64>>,
}

fn germ_data<C: Scalar>(
    gs: &[Polynomial<C>],
    delta: Option<&NewtonPolyhedron>,
) -> Result<GermData<C>, Case> {
    if gs.is_empty() {
        return Err(Case::new("generators", Verdict::Inconclusive).note("no generators"));
    }
    if let Some(i) = gs.iter().position(Polynomial::is_zero) {
        let mut c = Case::new("generators", Verdict::Fail).note("a generator is zero");
        c.witness.push(format!("g{} = 0", i + 1));
        return Err(c);
    }
    let delta = match delta {
        Some(d) => d.clone(),
        None => NewtonPolyhedron::of_product(gs).map_err(|e| {
            Case::new("newton polyhedron", Verdict::Inconclusive).note(e.to_string())
        })?,
    };
    let nu = nu_matrix(gs, delta.facets())
        .map_err(|e| Case::new("newton polyhedron", Verdict::Inconclusive).note(e.to_string()))?;
    Ok(GermData {
        n: delta.nvars(),
        gs: gs.to_vec(),
        delta,
        nu,
    })
}

fn subsets(r: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, r: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            rec(i + 1, r, s, cur, out);
            cur.pop();
        }
    }
    rec(0, r, s, &mut cur, &mut out);
    out
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

/// Whether every polynomial is homogeneous for the weight `w`.
fn weight_homogeneous<C: Scalar>(system: &[Polynomial<C>], w: &[i64]) -> bool {
    system.iter().all(|g| {
        let mut vals = g.support().map(|q| dot(w, q.as_slice()));
        vals.next().is_none_or(|v| vals.all(|x| x == v))
    })
}

fn witness<C: Scalar>(system: &[Polynomial<C>]) -> Vec<String> {
    system
        .iter()
        .enumerate()
        .map(|(i, g)| format!("in g{} = {}", i + 1, g))
        .collect()
}

/// Codimension test at the origin on initial parts along facet sets of size
/// `s ≥ s_min`, with bound `k − s + shift`.
fn facet_check<C: Scalar>(
    name: &str,
    gs: &[Polynomial<C>],
    delta: Option<&NewtonPolyhedron>,
    s_min: usize,
    shift: i64,
    limits: &Limits,
) -> HypothesisReport {
    let d = match germ_data(gs, delta) {
        Ok(d) => d,
        Err(c) => return HypothesisReport::new(name, vec![c]),
    };
    let k = d.gs.len() as i64;
    let facets = d.delta.facets();
    let mut cases = Vec::new();
    for s in s_min..=facets.len() {
        for j in subsets(facets.len(), s) {
            let bound = k - s as i64 + shift;
            let system: Vec<Polynomial<C>> =
                d.gs.iter()
                    .zip(&d.nu)
                    .map(|(g, nu)| initial_part_facets(g, facets, nu, &j))
                    .collect();
            let mut c = Case::new(format!("s={s}"), Verdict::Pass);
            c.facets = Some(one_based(&j));
            c.bound = Some(bound);
            c.witness = witness(&system);
            if bound <= 0 {
                cases.push(c.note("bound is not positive"));
                continue;
            }
            match ideal_dim_affine(&system, d.n, limits) {
                Err(e) => {
                    c.verdict = Verdict::Inconclusive;
                    c = c.note(e.to_string());
                }
                Ok(dim) => {
                    c.dimension = Some(dim);
                    if dim >= 0 && (d.n as i64 - dim) < bound {
                        c.verdict = if weight_homogeneous(&system, &facets[j[0]].normal) {
                            Verdict::Fail
                        } else {
                            Verdict::Inconclusive
                        };
                    }
                }
            }
            cases.push(c);
        }
    }
    HypothesisReport::new(name, cases)
}

pub fn check_facet_codim<C: Scalar>(gs: &[Polynomial<C>], limits: &Limits) -> HypothesisReport {
    facet_check(Check::FacetCodim.name(), gs, None, 1, 1, limits)
}

pub fn check_facet_codim_weak<C: Scalar>(
    gs: &[Polynomial<C>],
    limits: &Limits,
) -> HypothesisReport {
    facet_check(Check::FacetCodimWeak.name(), gs, None, 1, 0, limits)
}

pub fn check_facet_codim_strong<C: Scalar>(
    gs: &[Polynomial<C>],
    limits: &Limits,
) -> HypothesisReport {
    facet_check(Check::FacetCodimStrong.name(), gs, None, 2, 2, limits)
}

struct ConeSystem<C> {
    e: Vec<usize>,
    p: Vec<usize>,
    system: Vec<Polynomial<C>>,
}

fn cone_systems<C: Scalar>(d: &GermData<C>) -> Result<Vec<ConeSystem<C>>, Case> {
    let fan = SimplicialFan::from_polyhedron(&d.delta)
        .map_err(|e| Case::new("fan", Verdict::Inconclusive).note(e.to_string()))?;
    let normals = d.delta.normals();
    Ok(fan
        .cones()
        .into_iter()
        .filter_map(|cone| {
            let (e, p) = (fan.e_part(&cone), fan.p_part(&cone));
            if p.is_empty() {
                return None;
            }
            let ps: Vec<&[i64]> = p.iter().map(|&j| normals[j].as_slice()).collect();
            let system =
                d.gs.iter()
                    .zip(&d.nu)
                    .map(|(g, nu)| {
                        let th: Vec<i64> = p.iter().map(|&j| nu[j]).collect();
                        initial_part_cone(g, &e, &ps, &th)
                    })
                    .collect();
            Some(ConeSystem { e, p, system })
        })
        .collect())
}

fn cone_case<C: Scalar>(cs: &ConeSystem<C>) -> Case {
    let mut c = Case::new(format!("l={},s={}", cs.e.len(), cs.p.len()), Verdict::Pass);
    c.coordinates = Some(one_based(&cs.e));
    c.facets = Some(one_based(&cs.p));
    c.witness = witness(&cs.system);
    c
}

fn cone_check<C: Scalar>(
    name: &str,
    gs: &[Polynomial<C>],
    delta: Option<&NewtonPolyhedron>,
    shift: i64,
    limits: &Limits,
) -> HypothesisReport {
    let d = match germ_data(gs, delta) {
        Ok(d) => d,
        Err(c) => return HypothesisReport::new(name, vec![c]),
    };
    match cone_systems(&d) {
        Ok(systems) => {
            HypothesisReport::new(name, cone_cases(&systems, d.gs.len(), d.n, shift, limits))
        }
        Err(c) => HypothesisReport::new(name, vec![c]),
    }
}

fn cone_cases<C: Scalar>(
    systems: &[ConeSystem<C>],
    k: usize,
    n: usize,
    shift: i64,
    limits: &Limits,
) -> Vec<Case> {
    systems
        .iter()
        .map(|cs| {
            let mut c = cone_case(cs);
            let bound = k as i64 - cs.e.len() as i64 - cs.p.len() as i64 + shift;
            c.bound = Some(bound);
            if bound <= 0 {
                return c.note("bound is not positive");
            }
            match ideal_dim_torus(&cs.system, n, limits) {
                Err(e) => {
                    c.verdict = Verdict::Inconclusive;
                    c.note(e.to_string())
                }
                Ok(dim) => {
                    c.dimension = Some(dim);
                    if dim >= 0 && (n as i64 - dim) < bound {
                        c.verdict = Verdict::Fail;
                    }
                    c
                }
            }
        })
        .collect()
}

/// The strict cone condition for the one-index filtration of `Δ` with
/// factor `M`. Each `g_i` has ψ-order `ρ_i`; on a cone, `in_σ g_i` keeps the
/// terms with `M⟨p_j, q⟩ = ν_jρ_i` for its facets and `q_i = 0` for its
/// coordinates.
pub fn check_one_index_cone_codim<C: Scalar>(
    gs: &[Polynomial<C>],
    delta: &NewtonPolyhedron,
    m: i64,
    limits: &Limits,
) -> HypothesisReport {
    let name = "one-index-cone-codim";
    let fail = |c: Case| HypothesisReport::new(name, vec![c]);
    if let Some(i) = gs.iter().position(Polynomial::is_zero) {
        let mut c = Case::new("generators", Verdict::Fail).note("a generator is zero");
        c.witness.push(format!("g{} = 0", i + 1));
        return fail(c);
    }
    let (normals, offsets) = (delta.normals(), delta.offsets());
    let filt = match Filtration::one_index(normals.clone(), offsets.clone(), m) {
        Ok(f) => f,
        Err(e) => return fail(Case::new("filtration", Verdict::Inconclusive).note(e.to_string())),
    };
    let rho: Vec<i64> = gs
        .iter()
        .map(|g| filt.order(g).expect("nonzero")[0])
        .collect();
    let fan = match SimplicialFan::from_polyhedron(delta) {
        Ok(f) => f,
        Err(e) => return fail(Case::new("fan", Verdict::Inconclusive).note(e.to_string())),
    };
    let systems: Vec<ConeSystem<C>> = fan
        .cones()
        .into_iter()
        .filter_map(|cone| {
            let (e, p) = (fan.e_part(&cone), fan.p_part(&cone));
            if p.is_empty() {
                return None;
            }
            let system = gs
                .iter()
                .zip(&rho)
                .map(|(g, r)| {
                    g.filter_terms(|q| {
                        e.iter().all(|&i| q[i] == 0)
                            && p.iter()
                                .all(|&j| m * dot(&normals[j], q.as_slice()) == offsets[j] * r)
                    })
                })
                .collect();
            Some(ConeSystem { e, p, system })
        })
        .collect();
    let mut cases = cone_cases(&systems, gs.len(), delta.nvars(), 1, limits);
    let mut c = Case::new("orders", Verdict::Pass);
    c.witness = rho
        .iter()
        .enumerate()
        .map(|(i, r)| format!("rho{} = {r}", i + 1))
        .collect();
    cases.insert(0, c);
    HypothesisReport::new(name, cases)
}

pub fn check_cone_codim<C: Scalar>(gs: &[Polynomial<C>], limits: &Limits) -> HypothesisReport {
    cone_check(Check::ConeCodim.name(), gs, None, 0, limits)
}

pub fn check_cone_codim_strict<C: Scalar>(
    gs: &[Polynomial<C>],
    limits: &Limits,
) -> HypothesisReport {
    cone_check(Check::ConeCodimStrict.name(), gs, None, 1, limits)
}

fn determinant<C: Scalar>(m: &[Vec<Polynomial<C>>], nvars: usize) -> Polynomial<C> {
    match m.len() {
        0 => Polynomial::one(nvars),
        1 => m[0][0].clone(),
        k => (0..k)
            .map(|col| {
                let minor: Vec<Vec<Polynomial<C>>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != col)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &determinant(&minor, nvars);
                if col % 2 == 0 {
                    term
                } else {
                    -&term
                }
            })
            .fold(Polynomial::zero(nvars), |a, b| &a + &b),
    }
}

/// All `k × k` minors of the Jacobian of `system`.
pub fn jacobian_minors<C: Scalar>(system: &[Polynomial<C>], nvars: usize) -> Vec<Polynomial<C>> {
    let jac: Vec<Vec<Polynomial<C>>> = system
        .iter()
        .map(|g| {
            (0..nvars)
                .map(|i| g.partial_derivative(i).expect("exponent overflow"))
                .collect()
        })
        .collect();
    subsets(nvars, system.len())
        .into_iter()
        .map(|cols| {
            let m: Vec<Vec<Polynomial<C>>> = jac
                .iter()
                .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                .collect();
            determinant(&m, nvars)
        })
        .filter(|p| !p.is_zero())
        .collect()
}

pub fn check_nondegenerate<C: Scalar>(gs: &[Polynomial<C>], limits: &Limits) -> HypothesisReport {
    nondegenerate(gs, None, limits)
}

fn nondegenerate<C: Scalar>(
    gs: &[Polynomial<C>],
    delta: Option<&NewtonPolyhedron>,
    limits: &Limits,
) -> HypothesisReport {
    let name = Check::Nondegenerate.name();
    let d = match germ_data(gs, delta) {
        Ok(d) => d,
        Err(c) => return HypothesisReport::new(name, vec![c]),
    };
    let systems = match cone_systems(&d) {
        Ok(s) => s,
        Err(c) => return HypothesisReport::new(name, vec![c]),
    };
    let k = d.gs.len() as i64;
    let cases = systems
        .iter()
        .map(|cs| {
            let mut c = cone_case(cs);
            c.bound = Some(k);
            let mut singular = cs.system.clone();
            singular.extend(jacobian_minors(&cs.system, d.n));
            let dims = ideal_dim_torus(&cs.system, d.n, limits)
                .and_then(|a| Ok((a, ideal_dim_torus(&singular, d.n, limits)?)));
            match dims {
                Err(e) => {
                    c.verdict = Verdict::Inconclusive;
                    c.note(e.to_string())
                }
                Ok((dim, sing)) => {
                    c.dimension = Some(dim);
                    if sing >= 0 {
                        c.verdict = Verdict::Fail;
                        c.note(format!("singular locus of dimension {sing} in the torus"))
                    } else if dim >= 0 && d.n as i64 - dim != k {
                        c.verdict = Verdict::Fail;
                        c.note(format!("codimension {} instead of {k}", d.n as i64 - dim))
                    } else {
                        c
                    }
                }
            }
        })
        .collect();
    HypothesisReport::new(name, cases)
}

fn polytopes<C: Scalar>(gs: &[Polynomial<C>]) -> Result<Vec<Polytope>, Case> {
    gs.iter()
        .enumerate()
        .map(|(i, g)| {
            let pts: Vec<_> = g.support().cloned().collect();
            Polytope::new(&pts)
                .map_err(|e| Case::new(format!("g{}", i + 1), Verdict::Fail).note(e.to_string()))
        })
        .collect()
}

fn boolean_case(label: &str, ok: bool) -> Case {
    Case::new(label, if ok { Verdict::Pass } else { Verdict::Fail })
}

pub fn check_full<C: Scalar>(gs: &[Polynomial<C>]) -> HypothesisReport {
    let name = Check::Full.name();
    let cases = match polytopes(gs) {
        Err(c) => vec![c],
        Ok(ps) => ps
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut c = boolean_case(&format!("g{}", i + 1), p.is_full());
                c.dimension = Some(p.dim() as i64);
                c
            })
            .collect(),
    };
    HypothesisReport::new(name, cases)
}

pub fn check_edges<C: Scalar>(gs: &[Polynomial<C>]) -> HypothesisReport {
    let cases = match polytopes(gs) {
        Err(c) => vec![c],
        Ok(ps) => vec![boolean_case("edge directions", edge_sets_equal(&ps))],
    };
    HypothesisReport::new(Check::Edges.name(), cases)
}

pub fn check_mixed_faces<C: Scalar>(gs: &[Polynomial<C>]) -> HypothesisReport {
    let cases = match polytopes(gs) {
        Err(c) => vec![c],
        Ok(ps) => vec![match mixed_faces_condition(&ps) {
            Ok(ok) => {
                let c = boolean_case("facets of the sum", ok);
                if ps[0].nvars() < 4 {
                    c.note("needs at least four variables")
                } else {
                    c
                }
            }
            Err(e) => Case::new("facets of the sum", Verdict::Inconclusive).note(e.to_string()),
        }],
    };
    HypothesisReport::new(Check::MixedFaces.name(), cases)
}

pub fn check_sum_dims<C: Scalar>(gs: &[Polynomial<C>]) -> HypothesisReport {
    let cases = match polytopes(gs) {
        Err(c) => vec![c],
        Ok(ps) => vec![match sum_dims_condition(&ps) {
            Ok(ok) => boolean_case("partial sums", ok),
            Err(e) => Case::new("partial sums", Verdict::Inconclusive).note(e.to_string()),
        }],
    };
    HypothesisReport::new(Check::SumDims.name(), cases)
}
