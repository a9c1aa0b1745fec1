//! Named reproduction scenarios. Each one recomputes its results from
//! scratch and renders a deterministic report.

use super::analyze::{analyze, same_factorizations};
use super::compare::{align_rows, compare_lstar};
use super::fixtures::{factorization_fixtures, n249, n35, N249_LSTAR, N249_P, N35_LSTAR, N35_P, N35_Q, W_5A1_TIMES_5184};
use super::WorkbenchError;
use crate::exactpoly::{buchberger_with, coefficient_rank, linear_reduce, linear_reduce_with, parse_poly, rational_span_basis, GbConfig, GroebnerBasis, LinearReduceOptions, LinearReduction, MPoly, MonomialOrder, PolySet, Ring};
use crate::feasibility::{gegenbauer, Condition, FeasConfig, Verdict};
use crate::solver::{canonical_form, run_search, Bound, Family, GridVar, SearchConfig, SearchOutput};
use crate::spectra::{recognize_rational, spectral_data, SpectralData};
use crate::structcheck::{is_cyclotomic, verify_sita, GaloisTag, Instance};
use crate::varietygen::{build_template, build_template_with, emit_structure_polys, enumerate_rational_tables, trace_constraints, Assumption, DegreeSymbols, InvolutionType, RationalCharTable, Template, TemplateOptions, TraceSource};
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproReport {
    pub scenario: String,
    pub lines: Vec<String>,
    pub checks: Vec<ReproCheck>,
}

impl ReproReport {
    fn new(name: &str) -> Self {
        ReproReport { scenario: name.to_string(), lines: Vec::new(), checks: Vec::new() }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(ReproCheck { name: name.to_string(), passed, detail: detail.into() });
        passed
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&ReproCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ReproReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario {}", self.scenario)?;
        for l in &self.lines {
            writeln!(f, "  {l}")?;
        }
        for c in &self.checks {
            writeln!(f, "check {} {} {}", c.name, if c.passed { "PASS" } else { "FAIL" }, c.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproOptions {
    pub feas: FeasConfig,
    pub gb: GbConfig,
    pub jobs: usize,
    /// Upper end of the exhaustive 5A1 grid over `m`.
    pub a51_max_m: i64,
    /// Largest order of the rational-table search.
    pub table_max_order: i64,
}

impl Default for ReproOptions {
    fn default() -> Self {
        ReproOptions { feas: FeasConfig::default(), gb: GbConfig::default(), jobs: 0, a51_max_m: 200, table_max_order: 45 }
    }
}

/// `(name, summary)` of every scenario.
pub const SCENARIOS: [(&str, &str); 11] = [
    ("4a1-pseudocyclic", "linear reduction of the pseudocyclic 4A1 system to one polynomial"),
    ("4a1-family", "all pseudocyclic 4A1 instances with k1 <= 40"),
    ("5a1-nonexistence", "elimination polynomial and parity obstruction for pseudocyclic 5A1"),
    ("5a2-symmetry", "nilpotent differences forced by the pseudocyclic 5A2 ideal"),
    ("5s-reduction", "linear reduction and parity of m for pseudocyclic 5S"),
    ("n249-narrow", "narrow 5S search at m = 62"),
    ("n35-battery", "spectra and feasibility of the order-35 instance"),
    ("n249-battery", "spectra and feasibility of the order-249 instance"),
    ("tables-35", "rationalized character tables of order 35"),
    ("fixtures", "consistency of the published factorization lists"),
    ("3t-search", "rational-table search over small orders"),
];

pub fn run_scenario(name: &str, opts: &ReproOptions) -> Result<ReproReport, WorkbenchError> {
    match name {
        "4a1-pseudocyclic" => four_a1_pseudocyclic(),
        "4a1-family" => four_a1_family(opts),
        "5a1-nonexistence" => five_a1(opts),
        "5a2-symmetry" => five_a2(opts),
        "5s-reduction" => five_s(),
        "n249-narrow" => n249_narrow(opts),
        "n35-battery" => n35_battery(opts),
        "n249-battery" => n249_battery(opts),
        "tables-35" => tables_35(),
        "fixtures" => fixtures_check(),
        "3t-search" => three_t_search(opts),
        other => Err(WorkbenchError::UnknownScenario(other.to_string())),
    }
}

fn pseudocyclic_system(t: &Template) -> Result<PolySet, WorkbenchError> {
    let mut s = emit_structure_polys(t);
    s.extend(&trace_constraints(t, &TraceSource::Pseudocyclic)?);
    s.extend(&t.side);
    Ok(s)
}

fn var(ring: &Arc<Ring>, name: &str) -> Result<usize, WorkbenchError> {
    ring.index_of(name).ok_or_else(|| WorkbenchError::Config(format!("unknown variable {name}")))
}

fn names(ring: &Ring, vs: &[usize]) -> String {
    vs.iter().map(|&v| ring.name(v)).collect::<Vec<_>>().join(",")
}

fn surviving(red: &LinearReduction) -> Vec<usize> {
    let mut vs: Vec<usize> = red.remaining.polys().iter().flat_map(|p| p.variables()).collect();
    vs.sort();
    vs.dedup();
    vs
}

/// The 4A1 pseudocyclic template with homogeneous degrees and its reduction
/// keeping `x5, k1`.
pub fn four_a1_reduction() -> Result<(Template, LinearReduction), WorkbenchError> {
    let t = build_template_with(4, InvolutionType::A41, Assumption::Pseudocyclic, &TemplateOptions::new(DegreeSymbols::Homogeneous))?;
    let s = pseudocyclic_system(&t)?;
    let keep = vec![var(&t.ring, "x5")?, var(&t.ring, "k1")?];
    let red = linear_reduce_with(&s, &t.positives(), &LinearReduceOptions { keep, max_steps: None })?;
    Ok((t, red))
}

fn four_a1_pseudocyclic() -> Result<ReproReport, WorkbenchError> {
    let mut rep = ReproReport::new("4a1-pseudocyclic");
    let (t, red) = four_a1_reduction()?;
    let r = &t.ring;
    rep.line(format!("template variables {}", r.names().join(",")));
    for (p, tag) in pseudocyclic_system(&t)?.iter() {
        rep.line(format!("generator [{tag}] {p}"));
    }
    for s in &red.substitutions {
        rep.line(format!("substitute {} := {} [{}]", r.name(s.var), s.expr, s.source));
    }
    for p in red.remaining.polys() {
        rep.line(format!("remaining {p}"));
    }
    let f = parse_poly(r, "36*x5^2-24*x5*k1+4*k1^2+32*x5-11*k1+7")?;
    let want = PolySet::from_polys(r, [f]);
    rep.check("one-polynomial", red.remaining.len() == 1, format!("{} remaining", red.remaining.len()));
    rep.check("matches-f", red.remaining.same_elements(&want), "36x5^2-24x5k1+4k1^2+32x5-11k1+7 up to normalization");
    let has = |v: &str, e: &str| -> Result<bool, WorkbenchError> {
        let (v, e) = (var(r, v)?, parse_poly(r, e)?);
        Ok(red.substitutions.iter().any(|s| s.var == v && s.expr == e))
    };
    let chain = has("x1", "x2")? && has("x2", "k2-1-2*x5")?;
    rep.check("chain", chain, "x1 := x2 and x2 := k2-1-2*x5");
    Ok(rep)
}

/// Search configuration for the pseudocyclic 4A1 family.
pub fn four_a1_family_config(k_max: i64, jobs: usize) -> SearchConfig {
    SearchConfig {
        itype: InvolutionType::A41,
        family: Family::Pseudocyclic { degrees: DegreeSymbols::Homogeneous },
        grid: vec![GridVar::range("k1", 1, k_max)],
        sum_caps: vec![],
        keep: vec!["x5".into()],
        gb: GbConfig::default(),
        jobs,
        branch: false,
    }
}

fn describe(out: &SearchOutput, rep: &mut ReproReport) -> Result<Vec<bool>, WorkbenchError> {
    let mut cyc = Vec::new();
    for inst in &out.instances {
        let c = is_cyclotomic(inst)?;
        rep.line(format!("instance order {} degrees {:?} {} {}", inst.order, inst.degrees, if c.cyclotomic { "cyclotomic" } else { "noncyclotomic" }, c.factorizations.join(" ")));
        cyc.push(c.cyclotomic);
    }
    Ok(cyc)
}

fn four_a1_family(opts: &ReproOptions) -> Result<ReproReport, WorkbenchError> {
    let mut rep = ReproReport::new("4a1-family");
    let out = run_search(&four_a1_family_config(40, opts.jobs))?;
    rep.line(format!("points {} with solutions {}", out.outcomes.len(), out.count(crate::solver::PointStatus::Sol)));
    let cyc = describe(&out, &mut rep)?;
    let ks: Vec<i64> = out.instances.iter().map(|i| i.degrees[1]).collect();
    rep.check("k1-values", ks == vec![1, 5, 21, 33], format!("{ks:?}"));
    rep.check("verified", out.instances.iter().all(|i| verify_sita(i).passed()), "every instance passes verify_sita");
    rep.check("cyclotomic", cyc.iter().all(|&c| c), "every instance is cyclotomic");
    Ok(rep)
}

/// The reduced pseudocyclic 5A1 system.
pub fn five_a1_reduction() -> Result<(Template, LinearReduction), WorkbenchError> {
    let t = build_template(5, InvolutionType::A51, Assumption::Pseudocyclic)?;
    let s = pseudocyclic_system(&t)?;
    let red = linear_reduce(&s, &t.positives())?;
    Ok((t, red))
}

/// Primitive integer multiple of `p`.
fn primitive(p: &MPoly) -> MPoly {
    let d = Rational::from(p.denominator_lcm());
    let q = p.scale(&d);
    let c = q.integer_content();
    if c == 0 {
        q
    } else {
        q.scale(&Rational::from((Integer::from(1), c)))
    }
}

/// `p` with `x_m := 2k`, as a primitive integer polynomial, when every
/// non-constant coefficient is even and the constant is odd: then `p` has
/// no integer zero with `m` even.
pub fn odd_after_even_substitution(p: &MPoly, m: usize) -> Option<MPoly> {
    let r2 = p.ring().extended("k");
    let k = MPoly::var(&r2, r2.nvars() - 1).scale(&Rational::from(2));
    let q = primitive(&p.embed(&r2).substitute(m, &k));
    let c = q.constant_term();
    let ok = c.denom() == &1u32 && c.numer().is_odd() && q.terms().all(|(mon, a)| mon.is_one() || a.numer().is_even());
    ok.then_some(q)
}

/// The generator `v - e` scaled to be integral forces `m` even when all
/// of its coefficients but the one of `m` are even and that one is odd.
fn forces_m_even(v: usize, e: &MPoly, m: usize) -> Option<MPoly> {
    let q = primitive(&(&MPoly::var(e.ring(), v) - e));
    let mm = crate::exactpoly::Monomial::var(q.ring().nvars(), m);
    let odd_m = q.coefficient(&mm).is_some_and(|c| c.numer().is_odd());
    let rest_even = q.terms().all(|(mon, a)| *mon == mm || a.numer().is_even());
    (odd_m && rest_even && q.degree_in(m) == 1).then_some(q)
}

fn five_a1(opts: &ReproOptions) -> Result<ReproReport, WorkbenchError> {
    let mut rep = ReproReport::new("5a1-nonexistence");
    let (t, red) = five_a1_reduction()?;
    let r = t.ring.clone();
    let x = |n: &str| var(&r, n);
    let (m, x9, x10, x13, x14) = (x("m")?, x("x9")?, x("x10")?, x("x13")?, x("x14")?);
    rep.line(format!("reduced to {} polynomials in {}", red.remaining.len(), names(&r, &surviving(&red))));
    for (v, e) in red.resolved() {
        rep.line(format!("resolved {} = {}", r.name(v), e));
    }
    let parity: Vec<String> = red.resolved().iter().filter_map(|(v, e)| forces_m_even(*v, e, m).map(|q| format!("{q}"))).collect();
    rep.check("m-even", !parity.is_empty(), format!("integrality: {}", parity.first().cloned().unwrap_or_default()));

    // the displayed list also contains x2 = x1 (here x10 = x9)
    let g0 = buchberger_with(&red.remaining, &MonomialOrder::grevlex(r.nvars()), &opts.gb)?;
    let diff = parse_poly(&r, "x9-x10")?;
    let in_ideal = g0.normal_form(&diff).is_zero();
    rep.line(format!("x9-x10 in reduced ideal: {in_ideal}"));
    let mut aug = red.remaining.clone();
    aug.insert(diff, "x2=x1");
    let order = MonomialOrder::elimination(&[x9, x10, x13], &[], r.nvars());
    let g = buchberger_with(&aug, &order, &opts.gb)?;
    let ry = Ring::new(["y", "m"]);
    let w = parse_poly(&ry, W_5A1_TIMES_5184)?;
    let mut map = vec![None; r.nvars()];
    map[x14] = Some(0);
    map[m] = Some(1);
    let first = g.polys().iter().find(|p| p.variables().iter().all(|&v| v == x14 || v == m)).cloned();
    let ratio = first.as_ref().and_then(|p| {
        let pw = p.remap(&ry, &map);
        let mon = pw.leading_monomial(&MonomialOrder::grevlex(2))?.clone();
        let c = Rational::from(w.coefficient(&mon)? / pw.coefficient(&mon)?);
        (pw.scale(&c) == w).then_some(Rational::from(1) / c)
    });
    match (&first, &ratio) {
        (Some(p), Some(c)) => {
            rep.line(format!("elimination element {p}"));
            rep.check("w-polynomial", true, format!("{c} * (5184 W) with y = x14, x2 = x1 adjoined"));
        }
        _ => {
            rep.check("w-polynomial", false, "no elimination element proportional to 5184 W");
        }
    }
    let odd = odd_after_even_substitution(&w, 1);
    rep.check("w-odd", odd.is_some(), "5184 W(y, 2k) is odd for all integers y, k");

    // the unaugmented ideal is already empty: d = x9 - x10 eliminated last but two
    let r2 = r.extended("d");
    let d = r2.nvars() - 1;
    let sub = &MPoly::var(&r2, x10) + &MPoly::var(&r2, d);
    let s2 = red.remaining.embed(&r2).map(|p| p.substitute(x9, &sub));
    let lex = MonomialOrder::lex_with(vec![x13, d, x10, x14, m], r2.nvars());
    let gl = buchberger_with(&s2, &lex, &opts.gb)?;
    let cert = gl.polys().iter().find_map(|p| odd_after_even_substitution(p, m));
    rep.check("parity-certificate", cert.is_some(), cert.map(|q| format!("odd constant {}", q.constant_term())).unwrap_or_else(|| "none".into()));

    let cfg = five_a1_search_config(opts.a51_max_m, opts.jobs);
    let out = run_search(&cfg)?;
    let posdim = out.count(crate::solver::PointStatus::Posdim) + out.count(crate::solver::PointStatus::Cap);
    rep.line(format!("grid points {} unresolved {}", out.outcomes.len(), posdim));
    rep.check("exhaustive-search", out.instances.is_empty() && posdim == 0, format!("m <= {}: {} instances", opts.a51_max_m, out.instances.len()));
    Ok(rep)
}

/// Exhaustive grid over `m ≤ max_m` and `x14 ≤ m` for pseudocyclic 5A1.
pub fn five_a1_search_config(max_m: i64, jobs: usize) -> SearchConfig {
    SearchConfig {
        itype: InvolutionType::A51,
        family: Family::Pseudocyclic { degrees: DegreeSymbols::Single },
        grid: vec![GridVar::range("m", 1, max_m), GridVar { name: "x14".into(), lo: Bound::Const(0), hi: Bound::Scaled { var: "m".into(), num: 1, den: 1 }, congruence: None }],
        sum_caps: vec![],
        keep: vec![],
        gb: GbConfig::default(),
        jobs,
        branch: true,
    }
}

/// Witness point of the pseudocyclic 5A2 system (`x1..x16, m`), found by
/// search: the order-29 cyclotomic scheme.
pub const A52_POINT_29: [i64; 17] = [2, 0, 3, 2, 1, 2, 1, 3, 1, 3, 2, 1, 2, 3, 2, 0, 7];

/// Whether `y^2` lies in the basis of the reduced 5A2 ideal with
/// `a = b + y` adjoined, and the value of `a - b` at the witness point.
pub fn five_a2_difference(t: &Template, red: &LinearReduction, a: &str, b: &str, gb: &GbConfig) -> Result<(bool, GroebnerBasis), WorkbenchError> {
    let r = &t.ring;
    let res = red.resolved();
    let expr = |n: &str| -> Result<MPoly, WorkbenchError> {
        let v = var(r, n)?;
        Ok(res.iter().find(|(w, _)| *w == v).map(|(_, e)| e.clone()).unwrap_or_else(|| MPoly::var(r, v)))
    };
    let r2 = r.extended("y");
    let y = r2.nvars() - 1;
    let mut s2 = red.remaining.embed(&r2);
    s2.insert(&(&expr(a)?.embed(&r2) - &expr(b)?.embed(&r2)) - &MPoly::var(&r2, y), "y");
    let red2 = linear_reduce_with(&s2, &[var(&r2, "m")?], &LinearReduceOptions { keep: vec![y], max_steps: None })?;
    let order = MonomialOrder::elimination(&[y], &[], r2.nvars());
    let g = buchberger_with(&red2.remaining, &order, gb)?;
    let y2 = MPoly::var(&r2, y).pow(2);
    Ok((g.contains(&y2), g))
}

fn five_a2(opts: &ReproOptions) -> Result<ReproReport, WorkbenchError> {
    let mut rep = ReproReport::new("5a2-symmetry");
    let t = build_template(5, InvolutionType::A52, Assumption::Pseudocyclic)?;
    let s = pseudocyclic_system(&t)?;
    let red = linear_reduce(&s, &t.positives())?;
    rep.line(format!("{} generators, reduced to {} in {}", s.len(), red.remaining.len(), names(&t.ring, &surviving(&red))));
    let labels: Vec<String> = (1..=16).map(|i| format!("x{i}")).chain(["m".to_string()]).collect();
    rep.check("variables", t.ring.names() == labels, t.ring.names().join(","));
    let mut conv = Vec::new();
    for (a, b) in A52_LINEAR {
        if !red.apply(&(&parse_poly(&t.ring, a)? - &parse_poly(&t.ring, b)?)).is_zero() {
            conv.push(format!("{a}={b}"));
        }
    }
    rep.check("linear-substitutions", conv.is_empty(), if conv.is_empty() { format!("all {} hold", A52_LINEAR.len()) } else { conv.join(" ") });
    let vals: Vec<Integer> = A52_POINT_29.iter().map(|&v| Integer::from(v)).collect();
    let on_variety = s.polys().iter().all(|p| p.eval_int(&vals) == 0);
    let witness = t.instantiate(&vals).map(Instance::new).transpose()?;
    let scheme = match &witness {
        Some(w) if on_variety && verify_sita(w).passed() => {
            let c = is_cyclotomic(w)?;
            rep.line(format!("witness order {} degrees {:?} {}", w.order, w.degrees, c.factorizations.join(" ")));
            c.cyclotomic
        }
        _ => false,
    };
    rep.check("witness", scheme, format!("{:?} is a cyclotomic SITAwIM on the variety", A52_POINT_29));
    for (a, b) in [("x16", "x2"), ("x8", "x4"), ("x11", "x3")] {
        let (has, g) = five_a2_difference(&t, &red, a, b, &opts.gb)?;
        let (va, vb) = (A52_POINT_29[var(&t.ring, a)?], A52_POINT_29[var(&t.ring, b)?]);
        rep.line(format!("{a}={b}+y: basis of {} elements, y^2 present: {has}", g.len()));
        let detail = if has { "y^2 in basis".to_string() } else { format!("y^2 not in basis; witness has {a}-{b} = {}", va - vb) };
        rep.check(&format!("{a}-{b}"), has, detail);
    }
    // the pairing that does hold; it also makes b1 and b3 permutation isomorphic
    for (a, b) in [("x8", "x3"), ("x11", "x4")] {
        let (has, _) = five_a2_difference(&t, &red, a, b, &opts.gb)?;
        rep.check(&format!("{a}-{b}"), has, if has { "y^2 in basis" } else { "y^2 not in basis" });
    }
    Ok(rep)
}

/// Linear relations of the pseudocyclic 5A2 system, `(variable, value)`.
pub const A52_LINEAR: [(&str, &str); 13] = [
    ("x16", "2*m-6*x1-x2-2"),
    ("x15", "x1"),
    ("x14", "3*x1+x2+x3+1-m"),
    ("x8", "3*x1+x2+x3+1-m"),
    ("x13", "2*x1-x3+1"),
    ("x11", "2*x1-x3+1"),
    ("x12", "1/2*m-1/2-x1"),
    ("x9", "1/2*m-1/2-x1"),
    ("x7", "1/2*m-1/2-x1"),
    ("x5", "1/2*m-1/2-x1"),
    ("x10", "x3"),
    ("x6", "m-x1-x2-x3"),
    ("x4", "m-x1-x2-x3"),
];

/// The reduced pseudocyclic 5S system.
pub fn five_s_reduction() -> Result<(Template, PolySet, LinearReduction), WorkbenchError> {
    let t = build_template(5, InvolutionType::S5, Assumption::Pseudocyclic)?;
    let s = pseudocyclic_system(&t)?;
    let red = linear_reduce(&s, &t.positives())?;
    Ok((t, s, red))
}

fn five_s() -> Result<ReproReport, WorkbenchError> {
    let mut rep = ReproReport::new("5s-reduction");
    let (t, s, red) = five_s_reduction()?;
    let r = &t.ring;
    let m = var(r, "m")?;
    rep.line(format!("{} generators in {} variables", s.len(), r.nvars()));
    rep.line(format!("reduced to {} polynomials in {}", red.remaining.len(), names(r, &surviving(&red))));
    for (v, e) in red.resolved() {
        rep.line(format!("resolved {} = {}", r.name(v), e));
    }
    let four_sum = red.resolved().into_iter().find_map(|(v, e)| {
        let q = forces_m_even(v, &e, m)?;
        let others: Vec<&Rational> = q.terms().filter(|(mon, _)| !mon.is_one() && mon.exp(m) == 0).map(|(_, c)| c).collect();
        (others.len() == 4 && others.iter().all(|c| c.numer().clone().abs() == 2) && q.constant_term() == 0).then_some(q)
    });
    rep.check("m-even", four_sum.is_some(), four_sum.map(|q| format!("{q}")).unwrap_or_else(|| "none".into()));
    let span = rational_span_basis(&red.remaining);
    rep.line(format!("span rank {}", coefficient_rank(red.remaining.polys())));
    rep.check("span-6", span.len() == 6, format!("{} elements", span.len()));
    Ok(rep)
}

/// Narrow 5S search at `m = 62` with `x22, x23, x24 ∈ [13, 18]`.
pub fn n249_narrow_config(jobs: usize) -> SearchConfig {
    SearchConfig {
        itype: InvolutionType::S5,
        family: Family::Pseudocyclic { degrees: DegreeSymbols::Single },
        grid: vec![GridVar::range("m", 62, 62), GridVar::range("x22", 13, 18), GridVar::range("x23", 13, 18), GridVar::range("x24", 13, 18)],
        sum_caps: vec![],
        keep: vec![],
        gb: GbConfig::default(),
        jobs,
        branch: false,
    }
}

fn fixture_factorizations(name: &str) -> Vec<String> {
    factorization_fixtures().into_iter().find(|f| f.name == name).map(|f| f.factorizations).unwrap_or_default()
}

fn n249_narrow(opts: &ReproOptions) -> Result<ReproReport, WorkbenchError> {
    let mut rep = ReproReport::new("n249-narrow");
    let out = run_search(&n249_narrow_config(opts.jobs))?;
    rep.line(format!("points {} with solutions {}", out.outcomes.len(), out.count(crate::solver::PointStatus::Sol)));
    for o in out.outcomes.iter().filter(|o| o.status != crate::solver::PointStatus::Empty) {
        rep.line(o.line());
    }
    let cyc = describe(&out, &mut rep)?;
    let nc: Vec<&Instance> = out.instances.iter().zip(&cyc).filter(|(_, c)| !**c).map(|(i, _)| i).collect();
    rep.check("one-noncyclotomic", nc.len() == 1, format!("{} noncyclotomic", nc.len()));
    if let Some(inst) = nc.first() {
        rep.check("equals-display", **inst == canonical_form(&n249()), "permutation equivalent to the displayed matrices");
        let c = is_cyclotomic(inst)?;
        rep.check("factorizations", same_factorizations(&c.factorizations, &fixture_factorizations("4T249"))?, c.factorizations.join(" "));
        let quartics: Vec<GaloisTag> = c.classes.iter().filter(|f| f.factor.degree() == 4).map(|f| f.class.tag).collect();
        rep.check("galois-s4", quartics.len() == 4 && quartics.iter().all(|&q| q == GaloisTag::S4), format!("{quartics:?}"));
    }
    Ok(rep)
}

fn max_abs_diff(a: &[Vec<f64>], b: &[[f64; 5]; 5]) -> f64 {
    a.iter().zip(b).flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).abs())).fold(0.0, f64::max)
}

/// Rows of `P`, and columns of `Q`, put in display order.
fn displayed_order(sd: &SpectralData, shown_p: &[[f64; 5]; 5]) -> Option<(Vec<usize>, Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    let p = SpectralData::to_f64(&sd.p);
    let q = SpectralData::to_f64(&sd.q);
    let sigma = align_rows(&p, shown_p, 1e-3)?;
    let pp = sigma.iter().map(|&l| p[l].clone()).collect();
    let qq = q.iter().map(|row| sigma.iter().map(|&l| row[l]).collect()).collect();
    Some((sigma, pp, qq))
}

fn battery_conditions(rep: &mut ReproReport, inst: &Instance, sd: &SpectralData, cfg: &FeasConfig) {
    let feas = crate::feasibility::feasibility(inst, cfg, Some(sd));
    for c in [Condition::Handshake, Condition::TriangleCount, Condition::ClosedSubsets, Condition::AbsoluteBound, Condition::KreinNonneg, Condition::Gegenbauer] {
        let r = feas.get(c);
        let ok = r.is_some_and(|r| matches!(r.verdict, Verdict::Pass | Verdict::Vacuous));
        rep.check(c.name(), ok, r.map(|r| format!("{} {}", r.verdict, r.detail)).unwrap_or_default());
    }
}

fn n35_battery(opts: &ReproOptions) -> Result<ReproReport, WorkbenchError> {
    let mut rep = ReproReport::new("n35-battery");
    let inst = n35();
    let a = analyze(&inst, &opts.feas)?;
    rep.line(format!("{}", a).trim_end().to_string());
    rep.check("multiplicities", a.multiplicities == ["1", "4", "10", "10", "10"], a.multiplicities.join(" "));
    rep.check("factorizations", same_factorizations(&a.factorizations, &fixture_factorizations("3T35"))?, a.factorizations.join(" "));
    let cubics = a.galois_tags();
    rep.check("noncyclotomic-s3", !a.cyclotomic && cubics.len() == 3 && cubics.iter().all(|c| c == "S3"), cubics.join(","));
    let sd = spectral_data(&inst, &opts.feas.spectra)?;
    match displayed_order(&sd, &N35_P) {
        Some((sigma, p, q)) => {
            let dp = max_abs_diff(&p, &N35_P);
            let dq = max_abs_diff(&q, &N35_Q);
            rep.check("p-display", dp < 1e-4, format!("max deviation {dp:.2e}"));
            rep.check("q-display", dq < 1e-4, format!("max deviation {dq:.2e}"));
            let cmp = compare_lstar(&sd, &N35_LSTAR, &sigma, 1e-4);
            for mm in &cmp.inconsistent_display {
                rep.line(format!("display slip L*{} row {} col {}: shown {} computed {:.6}", mm.matrix, mm.row, mm.col, mm.shown, mm.computed));
            }
            rep.check("lstar-display", cmp.unexplained.is_empty(), format!("{} agree, {} display slips, {} unexplained", cmp.agreeing, cmp.inconsistent_display.len(), cmp.unexplained.len()));
            let exact = exact_rationals(&sd, &N35_LSTAR, &sigma, opts.feas.spectra.max_den);
            rep.check("lstar-exact", exact.is_empty(), if exact.is_empty() { "2/3 5/3 20/9 25/6 recognized".to_string() } else { exact.join(" ") });
        }
        None => {
            rep.check("p-display", false, "rows do not align");
        }
    }
    battery_conditions(&mut rep, &inst, &sd, &opts.feas);
    let tens: Vec<usize> = (1..5).filter(|&l| sd.multiplicities[l] == 10).collect();
    let geg: Vec<_> = tens.iter().map(|&i| gegenbauer(&sd, i, 7, opts.feas.eps, false)).collect();
    rep.check("gegenbauer-m10", tens.len() == 3 && geg.iter().all(|g| g.passed()), format!("rows {tens:?} through l = 7"));
    Ok(rep)
}

/// Displayed entries equal to `2/3, 5/3, 20/9, 25/6` whose computed value
/// is not recognized as that rational.
fn exact_rationals(sd: &SpectralData, shown: &[[[f64; 5]; 5]; 4], sigma: &[usize], max_den: u64) -> Vec<String> {
    let targets = [(2, 3), (5, 3), (20, 9), (25, 6)];
    let mut bad = Vec::new();
    let mut seen = [false; 4];
    for (a, mat) in shown.iter().enumerate() {
        for (k, row) in mat.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                for (t, &(p, q)) in targets.iter().enumerate() {
                    if (v - p as f64 / q as f64).abs() > 1e-12 {
                        continue;
                    }
                    seen[t] = true;
                    let z = sd.krein[sigma[a + 1]][sigma[j]][sigma[k]].real();
                    if recognize_rational(z, max_den, 1e-30) != Some(Rational::from((p, q))) {
                        bad.push(format!("L*{}[{}][{}]", a + 1, k, j));
                    }
                }
            }
        }
    }
    for (t, s) in seen.iter().enumerate() {
        if !s {
            bad.push(format!("{}/{} not displayed", targets[t].0, targets[t].1));
        }
    }
    bad
}

fn n249_battery(opts: &ReproOptions) -> Result<ReproReport, WorkbenchError> {
    let mut rep = ReproReport::new("n249-battery");
    let inst = n249();
    let sd = spectral_data(&inst, &opts.feas.spectra)?;
    match displayed_order(&sd, &N249_P) {
        Some((sigma, p, q)) => {
            let dp = max_abs_diff(&p, &N249_P);
            rep.check("p-display", dp < 1e-4, format!("max deviation {dp:.2e}"));
            let mut dual: f64 = 0.0;
            for i in 1..5 {
                for j in 1..5 {
                    dual = dual.max((q[i][j] - p[j][i]).abs());
                }
            }
            rep.check("self-dual", dual < 1e-6, format!("max |Q_ij - P_ji| {dual:.2e}"));
            let cmp = compare_lstar(&sd, &N249_LSTAR, &sigma, 1e-3);
            for mm in &cmp.inconsistent_display {
                rep.line(format!("display slip L*{} row {} col {}: shown {} computed {:.4}", mm.matrix, mm.row, mm.col, mm.shown, mm.computed));
            }
            rep.check("lstar-display", cmp.unexplained.is_empty(), format!("{} agree, {} display slips, {} unexplained", cmp.agreeing, cmp.inconsistent_display.len(), cmp.unexplained.len()));
        }
        None => {
            rep.check("p-display", false, "rows do not align");
        }
    }
    battery_conditions(&mut rep, &inst, &sd, &opts.feas);
    Ok(rep)
}

/// The derived order-35 table.
pub fn table_35() -> RationalCharTable {
    RationalCharTable { n: 35, m1: 4, m2: 10, degrees: [4, 6, 12, 12], a: [-1, 6, -3, -3], t: [0, -3, 0, 0] }
}

fn tables_35() -> Result<ReproReport, WorkbenchError> {
    let mut rep = ReproReport::new("tables-35");
    let tabs = enumerate_rational_tables(35);
    for t in &tabs {
        rep.line(format!("m1={} m2={} d={:?} a={:?} t={:?}", t.m1, t.m2, t.degrees, t.a, t.t));
    }
    rep.check("contains-derived", tabs.contains(&table_35()), "d=(4,6,12,12) a=(-1,6,-3,-3) t=(0,-3,0,0)");
    rep.check("all-valid", tabs.iter().all(|t| t.is_valid()), format!("{} tables", tabs.len()));
    Ok(rep)
}

fn fixtures_check() -> Result<ReproReport, WorkbenchError> {
    let mut rep = ReproReport::new("fixtures");
    for fx in factorization_fixtures() {
        let c = super::analyze::check_factorization_fixture(&fx)?;
        let cols: Vec<String> = c.columns.iter().map(|d| format!("({},{},{})", d.degree, d.rational_value.map_or("-".into(), |a| a.to_string()), d.orbit_sum)).collect();
        rep.line(format!("{} order {} columns {}", fx.name, fx.order, cols.join(" ")));
        rep.check(&fx.name, c.passed(), format!("order {} trace {} moment {} classes {:?}", c.order_ok, c.trace_ok, c.second_moment_ok, c.classes));
    }
    Ok(rep)
}

/// Rational-table search over orders `5..=max_order`.
pub fn three_t_config(max_order: i64, jobs: usize) -> SearchConfig {
    SearchConfig {
        itype: InvolutionType::S5,
        family: Family::Tables { min_order: 5, max_order },
        grid: vec![],
        sum_caps: vec![],
        keep: vec![],
        gb: GbConfig::default(),
        jobs,
        branch: true,
    }
}

fn three_t_search(opts: &ReproOptions) -> Result<ReproReport, WorkbenchError> {
    let mut rep = ReproReport::new("3t-search");
    let out = run_search(&three_t_config(opts.table_max_order, opts.jobs))?;
    let unresolved = out.count(crate::solver::PointStatus::Posdim) + out.count(crate::solver::PointStatus::Cap);
    rep.line(format!("tables {} with solutions {} unresolved {}", out.outcomes.len(), out.count(crate::solver::PointStatus::Sol), unresolved));
    let cyc = describe(&out, &mut rep)?;
    let mut found: Vec<(i64, Vec<String>)> = Vec::new();
    for (inst, c) in out.instances.iter().zip(&cyc) {
        if !c {
            found.push((inst.order, is_cyclotomic(inst)?.factorizations));
        }
    }
    let known: Vec<_> = factorization_fixtures().into_iter().filter(|f| f.order <= opts.table_max_order && f.family == super::fixtures::GaloisFamily::ThreeTransitive).collect();
    let mut matched = vec![false; known.len()];
    let mut extra = Vec::new();
    for (n, fs) in &found {
        let hit = known.iter().position(|k| k.order == *n && same_factorizations(&k.factorizations, fs).unwrap_or(false));
        match hit {
            Some(h) => matched[h] = true,
            None => extra.push(format!("order {n}: {}", fs.join(" "))),
        }
    }
    rep.check("complete", unresolved == 0, format!("{unresolved} unresolved tables"));
    rep.check("known-found", matched.iter().all(|&m| m), known.iter().map(|k| k.name.clone()).collect::<Vec<_>>().join(","));
    rep.check("no-others", extra.is_empty(), if extra.is_empty() { "none".into() } else { extra.join("; ") });
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_scenario() {
        assert!(matches!(run_scenario("nope", &ReproOptions::default()), Err(WorkbenchError::UnknownScenario(_))));
    }

    #[test]
    fn four_a1_scenario_is_deterministic() {
        let opts = ReproOptions::default();
        let a = run_scenario("4a1-pseudocyclic", &opts).unwrap();
        let b = run_scenario("4a1-pseudocyclic", &opts).unwrap();
        assert!(a.passed(), "{a}");
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn w_is_odd_at_even_m() {
        let r = Ring::new(["y", "m"]);
        let w = parse_poly(&r, W_5A1_TIMES_5184).unwrap();
        let q = odd_after_even_substitution(&w, 1).unwrap();
        assert_eq!(q.constant_term(), 91);
        // y^2 + m has even values only when m is even and y even; not a certificate
        assert!(odd_after_even_substitution(&parse_poly(&r, "y^2+m").unwrap(), 1).is_none());
    }

    #[test]
    fn fixtures_and_tables_scenarios() {
        let opts = ReproOptions::default();
        assert!(run_scenario("fixtures", &opts).unwrap().passed());
        let t = run_scenario("tables-35", &opts).unwrap();
        assert!(t.passed(), "{t}");
    }
}
