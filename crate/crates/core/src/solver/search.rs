use super::solve::specialize_and_solve_partial;
use super::SolveError;
use crate::exactpoly::{linear_reduce_with, GbConfig, LinearReduceOptions, MPoly, PolySet};
use crate::structcheck::{canonical_form, multiplicities, verify_sita, Instance};
use crate::varietygen::{
    build_template_with, emit_structure_polys, enumerate_rational_tables, trace_constraints, Assumption, DegreeSymbols, InvolutionType, RationalCharTable, Template, TemplateOptions, TraceSource,
};
use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An integer bound, either fixed or a rational multiple of an earlier
/// grid variable (rounded inward).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    Const(i64),
    Scaled { var: String, num: i64, den: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridVar {
    pub name: String,
    pub lo: Bound,
    pub hi: Bound,
    /// `(modulus, residue)`: only values congruent to `residue`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub congruence: Option<(i64, i64)>,
}

impl GridVar {
    pub fn range(name: &str, lo: i64, hi: i64) -> Self {
        GridVar { name: name.into(), lo: Bound::Const(lo), hi: Bound::Const(hi), congruence: None }
    }

    /// Values within `pct` percent of `num/den` times `var`.
    pub fn window(name: &str, var: &str, num: i64, den: i64, pct: i64) -> Self {
        GridVar {
            name: name.into(),
            lo: Bound::Scaled { var: var.into(), num: num * (100 - pct), den: den * 100 },
            hi: Bound::Scaled { var: var.into(), num: num * (100 + pct), den: den * 100 },
            congruence: None,
        }
    }
}

/// `Σ vars ≤ at_most`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumCap {
    pub vars: Vec<String>,
    pub at_most: Bound,
}

/// Which systems are searched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Traces `tr(b_j) = δ_j - 1`, with the given degree representation.
    Pseudocyclic { degrees: DegreeSymbols },
    /// Every rationalized character table of each order in range.
    Tables { min_order: i64, max_order: i64 },
    /// The listed tables only.
    TableList { tables: Vec<RationalCharTable> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub itype: InvolutionType,
    pub family: Family,
    #[serde(default)]
    pub grid: Vec<GridVar>,
    #[serde(default)]
    pub sum_caps: Vec<SumCap>,
    /// Variables kept through linear reduction besides the grid.
    #[serde(default)]
    pub keep: Vec<String>,
    #[serde(default)]
    pub gb: GbConfig,
    /// Worker threads; 0 uses the global pool.
    #[serde(default)]
    pub jobs: usize,
    /// On a positive-dimensional remainder, enumerate the free variable
    /// with the smallest degree bound instead of reporting `posdim`.
    #[serde(default)]
    pub branch: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointStatus {
    Sol,
    Empty,
    Posdim,
    Cap,
}

impl fmt::Display for PointStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointStatus::Sol => "sol",
            PointStatus::Empty => "empty",
            PointStatus::Posdim => "posdim",
            PointStatus::Cap => "cap",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointOutcome {
    pub point: String,
    pub status: PointStatus,
    pub detail: String,
}

impl PointOutcome {
    /// `point=<assignment> status=<status>`.
    pub fn line(&self) -> String {
        if self.detail.is_empty() {
            format!("point={} status={}", self.point, self.status)
        } else {
            format!("point={} status={} {}", self.point, self.status, self.detail)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutput {
    /// Canonical representatives, sorted and deduplicated.
    pub instances: Vec<Instance>,
    pub outcomes: Vec<PointOutcome>,
}

impl SearchOutput {
    pub fn count(&self, s: PointStatus) -> usize {
        self.outcomes.iter().filter(|o| o.status == s).count()
    }
}

/// One polynomial system with its linear reduction.
pub struct PreparedSystem {
    pub label: String,
    pub template: Template,
    pub full: PolySet,
    pub remaining: PolySet,
    pub resolved: Vec<(usize, MPoly)>,
    /// Every template entry in the surviving variables.
    pub entries: Vec<MPoly>,
    /// `bounds[v]`: largest admissible value of `x_v`, when the degrees are numeric.
    pub bounds: Vec<Option<i64>>,
}

fn prepare(label: String, t: Template, trace: &TraceSource, grid: &[GridVar], keep: &[String]) -> Result<PreparedSystem, SolveError> {
    let mut full = emit_structure_polys(&t);
    full.extend(&trace_constraints(&t, trace).map_err(|e| SolveError::Config(e.to_string()))?);
    full.extend(&t.side);
    let mut keep_ids = Vec::new();
    for name in grid.iter().map(|g| &g.name).chain(keep) {
        keep_ids.push(t.ring.index_of(name).ok_or_else(|| SolveError::Config(format!("unknown variable {name}")))?);
    }
    let red = linear_reduce_with(&full, &t.positives(), &LinearReduceOptions { keep: keep_ids, max_steps: None })?;
    let resolved = red.resolved();
    let mut entries = Vec::new();
    let mut bounds: Vec<Option<i64>> = vec![None; t.ring.nvars()];
    for j in 0..t.rank {
        let deg = t.degrees[j].constant_value().and_then(|d| d.numer().to_i64());
        for row in &t.entries[j] {
            for e in row {
                let vs = e.variables();
                if let (Some(d), [v]) = (deg, vs.as_slice()) {
                    if *e == MPoly::var(&t.ring, *v) {
                        bounds[*v] = Some(bounds[*v].map_or(d, |b| b.min(d)));
                    }
                }
                let mut x = e.clone();
                for (v, r) in &resolved {
                    x = x.substitute(*v, r);
                }
                if !x.is_constant() {
                    entries.push(x);
                }
            }
        }
    }
    entries.sort_by_key(|e| e.to_string());
    entries.dedup();
    Ok(PreparedSystem { label, template: t, full, remaining: red.remaining, resolved, entries, bounds })
}

/// Column orders of a table compatible with the star permutation.
fn table_orders(tab: &RationalCharTable, itype: InvolutionType) -> Vec<RationalCharTable> {
    let star = itype.star();
    let cols = tab.columns();
    let mut out: Vec<RationalCharTable> = Vec::new();
    let perms: Vec<[usize; 4]> = if itype.is_symmetric() {
        vec![[0, 1, 2, 3]]
    } else {
        let mut v = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let mut s = p.to_vec();
                        s.sort();
                        s.dedup();
                        if s.len() == 4 {
                            v.push(p);
                        }
                    }
                }
            }
        }
        v
    };
    for p in perms {
        let c: Vec<(i64, i64, i64)> = p.iter().map(|&i| cols[i]).collect();
        if (1..5).any(|j| c[j - 1] != c[star[j] - 1]) {
            continue;
        }
        let t = RationalCharTable {
            n: tab.n,
            m1: tab.m1,
            m2: tab.m2,
            degrees: [c[0].0, c[1].0, c[2].0, c[3].0],
            a: [c[0].1, c[1].1, c[2].1, c[3].1],
            t: [c[0].2, c[1].2, c[2].2, c[3].2],
        };
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

fn table_label(t: &RationalCharTable) -> String {
    let j = |v: &[i64; 4]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    format!("n={};d={};a={};t={}", t.n, j(&t.degrees), j(&t.a), j(&t.t))
}

/// Build every system the configuration describes.
pub fn prepare_systems(cfg: &SearchConfig) -> Result<Vec<PreparedSystem>, SolveError> {
    let rank = cfg.itype.rank();
    match &cfg.family {
        Family::Pseudocyclic { degrees } => {
            let t = build_template_with(rank, cfg.itype, Assumption::Pseudocyclic, &TemplateOptions::new(degrees.clone())).map_err(|e| SolveError::Config(e.to_string()))?;
            Ok(vec![prepare(String::new(), t, &TraceSource::Pseudocyclic, &cfg.grid, &cfg.keep)?])
        }
        Family::Tables { .. } | Family::TableList { .. } => {
            if rank != 5 {
                return Err(SolveError::Config("table searches need rank 5".into()));
            }
            let tables: Vec<RationalCharTable> = match &cfg.family {
                Family::Tables { min_order, max_order } => (*min_order.max(&5)..=*max_order).flat_map(enumerate_rational_tables).collect(),
                Family::TableList { tables } => tables.clone(),
                _ => unreachable!(),
            };
            let ordered: Vec<RationalCharTable> = tables.iter().flat_map(|t| table_orders(t, cfg.itype)).collect();
            ordered
                .par_iter()
                .map(|tab| {
                    let opts = TemplateOptions::new(DegreeSymbols::Numeric(tab.degrees.to_vec()));
                    let t = build_template_with(rank, cfg.itype, Assumption::RationalTable, &opts).map_err(|e| SolveError::Config(e.to_string()))?;
                    prepare(table_label(tab), t, &TraceSource::Table(tab.clone()), &cfg.grid, &cfg.keep)
                })
                .collect()
        }
    }
}

fn eval_bound(b: &Bound, assigned: &[(String, i64)], upper: bool) -> Option<i64> {
    match b {
        Bound::Const(c) => Some(*c),
        Bound::Scaled { var, num, den } => {
            let v = assigned.iter().find(|(n, _)| n == var)?.1;
            let q = Rational::from((num * v, *den));
            let r = if upper { q.floor() } else { q.ceil() };
            r.numer().to_i64()
        }
    }
}

/// All grid points in lexicographic order of the declared variables.
pub fn grid_points(grid: &[GridVar], caps: &[SumCap]) -> Result<Vec<Vec<(String, i64)>>, SolveError> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(grid: &[GridVar], caps: &[SumCap], cur: &mut Vec<(String, i64)>, out: &mut Vec<Vec<(String, i64)>>) -> Result<(), SolveError> {
        let Some(g) = grid.get(cur.len()) else {
            out.push(cur.clone());
            return Ok(());
        };
        let lo = eval_bound(&g.lo, cur, false).ok_or_else(|| SolveError::Config(format!("bad lower bound for {}", g.name)))?;
        let hi = eval_bound(&g.hi, cur, true).ok_or_else(|| SolveError::Config(format!("bad upper bound for {}", g.name)))?;
        for v in lo..=hi {
            if let Some((m, r)) = g.congruence {
                if v.rem_euclid(m) != r.rem_euclid(m) {
                    continue;
                }
            }
            cur.push((g.name.clone(), v));
            let ok = caps.iter().all(|c| {
                if !c.vars.iter().all(|n| cur.iter().any(|(x, _)| x == n)) {
                    return true;
                }
                let s: i64 = c.vars.iter().map(|n| cur.iter().find(|(x, _)| x == n).unwrap().1).sum();
                eval_bound(&c.at_most, cur, true).is_none_or(|b| s <= b)
            });
            if ok {
                rec(grid, caps, cur, out)?;
            }
            cur.pop();
        }
        Ok(())
    }
    rec(grid, caps, &mut cur, &mut out)?;
    Ok(out)
}

fn render_point(label: &str, point: &[(String, i64)]) -> String {
    let vars = point.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(",");
    match (label.is_empty(), vars.is_empty()) {
        (true, _) => vars,
        (false, true) => label.to_string(),
        (false, false) => format!("{label};{vars}"),
    }
}

/// Some entry is fully determined and negative or fractional.
fn pruned(sys: &PreparedSystem, partial: &[(usize, Integer)]) -> bool {
    let vals: Vec<(usize, Rational)> = partial.iter().map(|(v, x)| (*v, Rational::from(x.clone()))).collect();
    sys.entries.iter().any(|e| {
        if !e.variables().iter().all(|v| partial.iter().any(|(u, _)| u == v)) {
            return false;
        }
        let x = e.substitute_values(&vals).constant_term();
        x < 0 || *x.denom() != 1
    })
}

fn solve_branching(sys: &PreparedSystem, partial: &mut Vec<(usize, Integer)>, gb: &GbConfig, branch: bool, out: &mut Vec<Vec<Option<Integer>>>) -> Result<(), SolveError> {
    if pruned(sys, partial) {
        return Ok(());
    }
    let nonneg: Vec<usize> = (0..sys.template.ring.nvars()).collect();
    match specialize_and_solve_partial(&sys.remaining, partial, &nonneg, gb) {
        Ok(r) => {
            out.extend(r);
            Ok(())
        }
        Err(SolveError::PositiveDimensional(free)) if branch => {
            let ring = &sys.template.ring;
            let pick = free.iter().filter_map(|n| ring.index_of(n)).filter_map(|v| sys.bounds[v].map(|b| (b, v))).min();
            let Some((b, v)) = pick else { return Err(SolveError::PositiveDimensional(free)) };
            for x in 0..=b {
                partial.push((v, Integer::from(x)));
                let r = solve_branching(sys, partial, gb, branch, out);
                partial.pop();
                r?;
            }
            Ok(())
        }
        Err(e) => Err(e),
    }
}

/// Suitable instances at one grid point of one system.
pub fn solve_point(sys: &PreparedSystem, point: &[(String, i64)], gb: &GbConfig, branch: bool) -> (PointOutcome, Vec<Instance>) {
    let t = &sys.template;
    let ring = &t.ring;
    let label = render_point(&sys.label, point);
    let outcome = |status, detail: String| PointOutcome { point: label.clone(), status, detail };
    let mut partial: Vec<(usize, Integer)> = point.iter().map(|(n, v)| (ring.index_of(n).expect("validated grid"), Integer::from(*v))).collect();
    let mut raw = Vec::new();
    match solve_branching(sys, &mut partial, gb, branch, &mut raw) {
        Ok(()) => {}
        Err(SolveError::PositiveDimensional(v)) => return (outcome(PointStatus::Posdim, format!("free={}", v.join(","))), Vec::new()),
        Err(SolveError::Cap(s)) => return (outcome(PointStatus::Cap, s), Vec::new()),
        Err(e) => return (outcome(PointStatus::Cap, e.to_string()), Vec::new()),
    }
    let eliminated: Vec<usize> = sys.resolved.iter().map(|(v, _)| *v).collect();
    let mut found = Vec::new();
    for vals in raw {
        let free: Vec<&str> = (0..ring.nvars()).filter(|&v| vals[v].is_none() && !eliminated.contains(&v)).map(|v| ring.name(v)).collect();
        if !free.is_empty() {
            return (outcome(PointStatus::Posdim, format!("free={}", free.join(","))), Vec::new());
        }
        let known: Vec<Rational> = vals.iter().map(|x| x.clone().map(Rational::from).unwrap_or_default()).collect();
        let mut full: Vec<Integer> = vec![Integer::new(); ring.nvars()];
        let mut integral = true;
        for v in 0..ring.nvars() {
            if let Some(x) = &vals[v] {
                full[v] = x.clone();
            }
        }
        for (v, e) in &sys.resolved {
            let x = e.eval(&known);
            if *x.denom() != 1 {
                integral = false;
                break;
            }
            full[*v] = x.numer().clone();
        }
        if !integral || full.iter().any(|x| *x < 0) || !sys.full.polys().iter().all(|p| p.eval_int(&full) == 0) {
            continue;
        }
        let Some(mats) = t.instantiate(&full) else { continue };
        if mats.iter().flatten().flatten().any(|&x| x < 0) {
            continue;
        }
        let Some(degs) = t.degree_values(&full) else { continue };
        if degs.iter().any(|&d| d < 1) {
            continue;
        }
        let Ok(inst) = Instance::new(mats) else { continue };
        if !verify_sita(&inst).passed() {
            continue;
        }
        let Ok(mult) = multiplicities(&inst) else { continue };
        if !mult.integral || mult.values().iter().any(|m| *m <= 0) {
            continue;
        }
        found.push(inst);
    }
    if found.is_empty() {
        (outcome(PointStatus::Empty, String::new()), found)
    } else {
        let n = found.len();
        (outcome(PointStatus::Sol, format!("count={n}")), found)
    }
}

/// Key for sorting canonical instances.
pub fn instance_key(inst: &Instance) -> (i64, Vec<i64>, Vec<i64>) {
    (inst.order, inst.degrees.clone(), inst.matrices.iter().flatten().flatten().copied().collect())
}

/// Exhaustive search over the grid of every prepared system. Results are
/// canonicalized, deduplicated and sorted, independent of scheduling.
pub fn run_search(cfg: &SearchConfig) -> Result<SearchOutput, SolveError> {
    let run = || -> Result<SearchOutput, SolveError> {
        let systems = prepare_systems(cfg)?;
        for sys in &systems {
            for g in &cfg.grid {
                if sys.template.ring.index_of(&g.name).is_none() {
                    return Err(SolveError::Config(format!("unknown grid variable {}", g.name)));
                }
            }
        }
        let points = grid_points(&cfg.grid, &cfg.sum_caps)?;
        let work: Vec<(usize, usize)> = (0..systems.len()).flat_map(|s| (0..points.len()).map(move |p| (s, p))).collect();
        let results: Vec<(PointOutcome, Vec<Instance>)> = work
            .par_iter()
            .map(|&(s, p)| {
                let (o, insts) = solve_point(&systems[s], &points[p], &cfg.gb, cfg.branch);
                log::info!("{}", o.line());
                (o, insts.iter().map(canonical_form).collect())
            })
            .collect();
        let mut instances: Vec<Instance> = Vec::new();
        let mut outcomes = Vec::with_capacity(results.len());
        for (o, insts) in results {
            outcomes.push(o);
            instances.extend(insts);
        }
        instances.sort_by_key(instance_key);
        instances.dedup_by(|a, b| instance_key(a) == instance_key(b));
        Ok(SearchOutput { instances, outcomes })
    };
    if cfg.jobs == 0 {
        run()
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().map_err(|e| SolveError::Config(e.to_string()))?;
        pool.install(run)
    }
}
