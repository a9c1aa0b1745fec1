use super::tables::RationalCharTable;
use super::{InvolutionType, VarietyError};
use crate::exactpoly::{MPoly, PolySet, Ring};
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Assumption {
    None,
    Pseudocyclic,
    RationalTable,
}

/// How the degrees of the nontrivial basis elements are represented.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeSymbols {
    /// One symbol `k_c` per star class.
    PerClass,
    /// Per-class symbols plus side generators `k_c - k_1`.
    Homogeneous,
    /// A single symbol `m` for every nontrivial degree.
    Single,
    /// Fixed integer degrees `δ_1..δ_{r-1}`.
    Numeric(Vec<i64>),
}

/// Which column of each row of `b_j` is expressed through the row sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Elimination {
    /// Column `j` (the entry λ_{jji}).
    Diagonal,
    /// Column `j*` (the entry λ_{jj*i}).
    Star,
}

impl Elimination {
    /// Layout matching the conventional displays for each type.
    pub fn default_for(itype: InvolutionType) -> Elimination {
        match itype {
            InvolutionType::A51 | InvolutionType::A52 => Elimination::Star,
            _ => Elimination::Diagonal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateOptions {
    pub degrees: DegreeSymbols,
    /// `None` selects [`Elimination::default_for`].
    pub elimination: Option<Elimination>,
}

impl TemplateOptions {
    pub fn new(degrees: DegreeSymbols) -> Self {
        TemplateOptions { degrees, elimination: None }
    }
}

/// Symbolic regular matrices `b_0..b_{r-1}` with affine entries.
///
/// `entries[j][i][k]` is row `i`, column `k` of `b_j`, i.e. the
/// coefficient of `b_i` in `b_j b_k`.
#[derive(Clone, Debug)]
pub struct Template {
    pub rank: usize,
    pub itype: InvolutionType,
    pub assumption: Assumption,
    pub ring: Arc<Ring>,
    /// Structure-constant variables are ring ids `0..num_struct_vars`.
    pub num_struct_vars: usize,
    pub degree_vars: Vec<usize>,
    pub degrees: Vec<MPoly>,
    pub entries: Vec<Vec<Vec<MPoly>>>,
    /// Extra identities implied by the degree representation.
    pub side: PolySet,
}

impl Template {
    pub fn star(&self) -> Vec<usize> {
        self.itype.star()
    }

    /// Coefficient of `b_k` in `b_i b_j`.
    pub fn lambda(&self, i: usize, j: usize, k: usize) -> &MPoly {
        &self.entries[i][k][j]
    }

    pub fn matrix(&self, j: usize) -> &Vec<Vec<MPoly>> {
        &self.entries[j]
    }

    /// Variables known to be strictly positive.
    pub fn positives(&self) -> Vec<usize> {
        self.degree_vars.clone()
    }

    pub fn struct_vars(&self) -> Vec<usize> {
        (0..self.num_struct_vars).collect()
    }

    pub fn var_name(&self, v: usize) -> &str {
        self.ring.name(v)
    }

    /// Integer matrices at a full assignment of ring variables; `None` if
    /// some entry is not an integer.
    pub fn instantiate(&self, values: &[Integer]) -> Option<Vec<Vec<Vec<i64>>>> {
        let mut out = Vec::with_capacity(self.rank);
        for j in 0..self.rank {
            let mut m = Vec::with_capacity(self.rank);
            for i in 0..self.rank {
                let mut row = Vec::with_capacity(self.rank);
                for k in 0..self.rank {
                    let v = self.entries[j][i][k].eval_int(values);
                    if *v.denom() != 1 {
                        return None;
                    }
                    row.push(v.numer().to_i64()?);
                }
                m.push(row);
            }
            out.push(m);
        }
        Some(out)
    }

    /// Degree values at a full assignment.
    pub fn degree_values(&self, values: &[Integer]) -> Option<Vec<i64>> {
        self.degrees
            .iter()
            .map(|d| {
                let v = d.eval_int(values);
                if *v.denom() == 1 {
                    v.numer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    /// Symbolic product `b_a b_b`.
    pub fn product(&self, a: usize, b: usize) -> Vec<Vec<MPoly>> {
        let r = self.rank;
        let mut out = vec![vec![MPoly::zero(&self.ring); r]; r];
        for i in 0..r {
            for k in 0..r {
                let mut acc = MPoly::zero(&self.ring);
                for l in 0..r {
                    let x = &self.entries[a][i][l];
                    let y = &self.entries[b][l][k];
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    acc = &acc + &(x * y);
                }
                out[i][k] = acc;
            }
        }
        out
    }

    /// Symbolic trace of `b_j`.
    pub fn trace(&self, j: usize) -> MPoly {
        let mut acc = MPoly::zero(&self.ring);
        for i in 0..self.rank {
            acc = &acc + &self.entries[j][i][i];
        }
        acc
    }

    /// Multiline rendering of every matrix.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for j in 1..self.rank {
            s.push_str(&format!("b{} =\n", j));
            for i in 0..self.rank {
                let row: Vec<String> = self.entries[j][i].iter().map(|e| e.to_string()).collect();
                s.push_str(&format!("  [{}]\n", row.join(", ")));
            }
        }
        s
    }
}

fn orbit_rep(t: (usize, usize, usize), star: &[usize]) -> (usize, usize, usize) {
    let (j, k, i) = t;
    let imgs = [(j, k, i), (k, j, i), (star[j], star[k], star[i]), (star[k], star[j], star[i])];
    *imgs.iter().min().unwrap()
}

/// Template with the default degree representation for `assumption`.
pub fn build_template(rank: usize, itype: InvolutionType, assumption: Assumption) -> Result<Template, VarietyError> {
    let degrees = match assumption {
        Assumption::Pseudocyclic => DegreeSymbols::Single,
        _ => DegreeSymbols::PerClass,
    };
    build_template_with(rank, itype, assumption, &TemplateOptions::new(degrees))
}

pub fn build_template_with(rank: usize, itype: InvolutionType, assumption: Assumption, opts: &TemplateOptions) -> Result<Template, VarietyError> {
    if !(2..=5).contains(&rank) || itype.rank() != rank {
        return Err(VarietyError::Unsupported { rank, itype: itype.to_string() });
    }
    if let DegreeSymbols::Numeric(d) = &opts.degrees {
        if d.len() != rank - 1 || d.iter().any(|&x| x < 1) {
            return Err(VarietyError::Unsupported { rank, itype: itype.to_string() });
        }
    }
    let star = itype.star();
    let r = rank;

    let elim = opts.elimination.unwrap_or_else(|| Elimination::default_for(itype));
    let elim_col: Vec<usize> = (0..r).map(|j| if elim == Elimination::Star { star[j] } else { j }).collect();

    // one variable per orbit of surviving triples, numbered column-major
    let mut var_of: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut slot: Vec<Vec<Vec<Option<usize>>>> = vec![vec![vec![None; r]; r]; r];
    let mut nvars = 0usize;
    for j in 1..r {
        for k in 1..r {
            for i in 1..r {
                if k == elim_col[j] {
                    continue;
                }
                let rep = orbit_rep((j, k, i), &star);
                let v = *var_of.entry(rep).or_insert_with(|| {
                    nvars += 1;
                    nvars - 1
                });
                slot[j][i][k] = Some(v);
            }
        }
    }

    let mut names: Vec<String> = (1..=nvars).map(|i| format!("x{}", i)).collect();
    let mut class_names: Vec<Option<String>> = vec![None; r];
    let mut degree_names: Vec<String> = Vec::new();
    match &opts.degrees {
        DegreeSymbols::PerClass | DegreeSymbols::Homogeneous => {
            for j in 1..r {
                let c = j.min(star[j]);
                let name = format!("k{}", c);
                if !degree_names.contains(&name) {
                    degree_names.push(name.clone());
                }
                class_names[j] = Some(name);
            }
        }
        DegreeSymbols::Single => {
            degree_names.push("m".to_string());
            for c in class_names.iter_mut().skip(1) {
                *c = Some("m".to_string());
            }
        }
        DegreeSymbols::Numeric(_) => {}
    }
    names.extend(degree_names.iter().cloned());
    let ring = Ring::new(names);
    let degree_vars: Vec<usize> = degree_names.iter().map(|n| ring.index_of(n).unwrap()).collect();

    let mut degrees = vec![MPoly::one(&ring)];
    for j in 1..r {
        let d = match &opts.degrees {
            DegreeSymbols::Numeric(v) => MPoly::constant(&ring, v[j - 1]),
            _ => MPoly::var(&ring, ring.index_of(class_names[j].as_ref().unwrap()).unwrap()),
        };
        degrees.push(d);
    }

    let zero = MPoly::zero(&ring);
    let one = MPoly::one(&ring);
    let mut entries = vec![vec![vec![zero.clone(); r]; r]; r];
    for i in 0..r {
        entries[0][i][i] = one.clone();
    }
    for j in 1..r {
        entries[j][0][star[j]] = degrees[j].clone();
        entries[j][j][0] = one.clone();
        for i in 1..r {
            let mut rest = degrees[j].clone();
            if i == j {
                rest = &rest - &one;
            }
            for k in 1..r {
                if let Some(v) = slot[j][i][k] {
                    let x = MPoly::var(&ring, v);
                    rest = &rest - &x;
                    entries[j][i][k] = x;
                }
            }
            entries[j][i][elim_col[j]] = rest;
        }
    }

    let mut side = PolySet::new(&ring);
    if opts.degrees == DegreeSymbols::Homogeneous && degree_vars.len() > 1 {
        let first = MPoly::var(&ring, degree_vars[0]);
        for &v in &degree_vars[1..] {
            side.insert(&MPoly::var(&ring, v) - &first, format!("homogeneous({})", ring.name(v)));
        }
    }

    Ok(Template { rank, itype, assumption, ring, num_struct_vars: nvars, degree_vars, degrees, entries, side })
}

fn push_matrix_identity(out: &mut PolySet, lhs: &[Vec<MPoly>], rhs: &[Vec<MPoly>], tag: &str) {
    let r = lhs.len();
    for i in 0..r {
        for k in 0..r {
            let d = &lhs[i][k] - &rhs[i][k];
            out.insert(d, format!("{}[{},{}]", tag, i, k));
        }
    }
}

/// Entrywise identities of `b_a b_b = Σ_k λ_{abk} b_k`.
pub fn emit_pair_polys(t: &Template, a: usize, b: usize) -> PolySet {
    let r = t.rank;
    let mut out = PolySet::new(&t.ring);
    let lhs = t.product(a, b);
    let mut rhs = vec![vec![MPoly::zero(&t.ring); r]; r];
    for k in 0..r {
        let l = t.lambda(a, b, k);
        if l.is_zero() {
            continue;
        }
        for i in 0..r {
            for c in 0..r {
                let e = &t.entries[k][i][c];
                if !e.is_zero() {
                    rhs[i][c] = &rhs[i][c] + &(l * e);
                }
            }
        }
    }
    push_matrix_identity(&mut out, &lhs, &rhs, &format!("b{}b{}", a, b));
    out
}

/// Full structure-constant system: product identities for every ordered
/// pair of nontrivial elements and all commutators.
pub fn emit_structure_polys(t: &Template) -> PolySet {
    let r = t.rank;
    let mut out = PolySet::new(&t.ring);
    for a in 1..r {
        for b in 1..r {
            out.extend(&emit_pair_polys(t, a, b));
        }
    }
    for a in 1..r {
        for b in a + 1..r {
            let ab = t.product(a, b);
            let ba = t.product(b, a);
            push_matrix_identity(&mut out, &ab, &ba, &format!("comm(b{},b{})", a, b));
        }
    }
    out
}

/// Source of the trace targets.
#[derive(Clone, Debug)]
pub enum TraceSource {
    /// `tr(b_j) = δ_j - 1`.
    Pseudocyclic,
    /// `tr(b_j) = δ_j + a_j + t_j`, degrees pinned to the table.
    Table(RationalCharTable),
}

pub fn trace_constraints(t: &Template, source: &TraceSource) -> Result<PolySet, VarietyError> {
    let mut out = PolySet::new(&t.ring);
    match source {
        TraceSource::Pseudocyclic => {
            if t.assumption != Assumption::Pseudocyclic {
                return Err(VarietyError::AssumptionMismatch);
            }
            for j in 1..t.rank {
                let target = &t.degrees[j] - &MPoly::one(&t.ring);
                out.insert(&t.trace(j) - &target, format!("tr(b{})", j));
            }
        }
        TraceSource::Table(tab) => {
            if t.assumption != Assumption::RationalTable || t.rank != 5 {
                return Err(VarietyError::AssumptionMismatch);
            }
            for j in 1..t.rank {
                let d = tab.degrees[j - 1];
                let target = MPoly::constant(&t.ring, Rational::from(d + tab.a[j - 1] + tab.t[j - 1]));
                out.insert(&t.trace(j) - &target, format!("tr(b{})", j));
                out.insert(&t.degrees[j] - &MPoly::constant(&t.ring, d), format!("deg(b{})", j));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    #[test]
    fn rank2_complete_graph() {
        let t = build_template(2, InvolutionType::R2, Assumption::None).unwrap();
        assert_eq!(t.num_struct_vars, 0);
        let n = 7;
        let vals = vec![Integer::from(n - 1)];
        let m = t.instantiate(&vals).unwrap();
        assert_eq!(m[1], vec![vec![0, n - 1], vec![1, n - 2]]);
    }

    #[test]
    fn template_4a1_shapes() {
        let t = build_template_with(4, InvolutionType::A41, Assumption::Pseudocyclic, &TemplateOptions::new(DegreeSymbols::Homogeneous))
            .unwrap();
        assert_eq!(t.num_struct_vars, 5);
        let p = |s: &str| parse_poly(&t.ring, s).unwrap();
        assert_eq!(t.entries[1][1][1], p("k1-2*x1-1"));
        assert_eq!(t.entries[1][2][1], p("k1-x2-x3"));
        assert_eq!(t.entries[1][3][2], p("x3"));
        assert_eq!(t.entries[2][1][2], p("k2-x1-x4"));
        assert_eq!(t.entries[2][2][2], p("k2-x2-x5-1"));
        assert_eq!(t.entries[3][3][1], p("x2"));
        assert_eq!(t.entries[3][2][3], p("k2-x3-x5"));
        assert_eq!(t.entries[2][0][3], p("k2"));
    }

    /// Display names of the 5A1 layout, as `(matrix, row, col)` positions.
    fn display_5a1(t: &Template, name: &str) -> MPoly {
        let n: usize = name[1..].parse().unwrap();
        let (j, i, k) = match n {
            1..=4 => (1, n, 2),
            5..=8 => (1, n - 4, 3),
            9..=12 => (2, n - 8, 3),
            _ => (3, n - 12, 3),
        };
        t.entries[j][i][k].clone()
    }

    #[test]
    fn template_5a1_shapes() {
        let t = build_template(5, InvolutionType::A51, Assumption::Pseudocyclic).unwrap();
        // λ_{124} = λ_{123} is forced by the involution, so one fewer variable
        // than a display that keeps them apart
        assert_eq!(t.num_struct_vars, 15);
        assert_eq!(t.lambda(1, 2, 4), t.lambda(1, 2, 3));
        let p = |s: &str| parse_poly(&t.ring, s).unwrap();
        assert_eq!(t.entries[1][1][1], p("m-1-x1-2*x4"));
        assert_eq!(t.entries[3][3][4], p("m-1-x6-x10-x14"));
        assert_eq!(t.entries[4][3][4], t.entries[3][4][3]);
        // the displayed trace identities, rewritten through the display layout
        let d = |s: &str| display_5a1(&t, s);
        let want = [
            &(&d("x1") + &d("x5").scale(&Rational::from(2))) - &(&d("x2") + &d("x7").scale(&Rational::from(2))),
            &(&d("x1") + &d("x11").scale(&Rational::from(2))) - &(&d("x2") + &d("x10").scale(&Rational::from(2))),
            &(&(&(&d("x5") + &d("x10")) + &d("x15")) + &MPoly::one(&t.ring)) - &(&(&d("x8") + &d("x12")) + &d("x16")),
        ];
        let want = PolySet::from_polys(&t.ring, want);
        let tr = trace_constraints(&t, &TraceSource::Pseudocyclic).unwrap();
        assert!(tr.same_elements(&want), "{:?}", tr.polys());
    }

    #[test]
    fn template_5a2_shapes() {
        let t = build_template(5, InvolutionType::A52, Assumption::Pseudocyclic).unwrap();
        assert_eq!(t.num_struct_vars, 16);
        let p = |s: &str| parse_poly(&t.ring, s).unwrap();
        assert_eq!(t.entries[1][1][2], p("m-1-x1-x5-x9"));
        assert_eq!(t.entries[1][4][4], p("x12"));
        assert_eq!(t.entries[2][1][3], p("x10"));
        assert_eq!(t.entries[2][4][1], p("m-x3-x7-x11"));
        assert_eq!(t.entries[3][2][2], p("x9"));
        assert_eq!(t.entries[3][4][3], p("x16"));
        assert_eq!(t.entries[4][1][3], p("m-x6-x9-x14"));
        assert_eq!(t.entries[4][4][4], p("x15"));
        let tr = trace_constraints(&t, &TraceSource::Pseudocyclic).unwrap();
        let want = PolySet::from_polys(&t.ring, [p("x1+x7+x12+1-x2-x6-x10"), p("x5+x9+x15+1-x8-x11-x16")]);
        assert!(tr.same_elements(&want), "{:?}", tr.polys());
    }

    #[test]
    fn row_sums_are_degrees() {
        for it in InvolutionType::ALL {
            let t = build_template(it.rank(), it, Assumption::None).unwrap();
            for j in 0..t.rank {
                for i in 0..t.rank {
                    let mut s = MPoly::zero(&t.ring);
                    for k in 0..t.rank {
                        s = &s + &t.entries[j][i][k];
                    }
                    assert_eq!(s, t.degrees[j], "{} b{} row {}", it, j, i);
                }
            }
        }
    }

    #[test]
    fn sharing_realizes_commutativity_and_involution() {
        let t = build_template(5, InvolutionType::S5, Assumption::Pseudocyclic).unwrap();
        assert_eq!(t.num_struct_vars, 24);
        assert_eq!(t.ring.nvars(), 25);
        for it in InvolutionType::ALL {
            let t = build_template(it.rank(), it, Assumption::None).unwrap();
            let s = it.star();
            for i in 1..t.rank {
                for j in 1..t.rank {
                    for k in 1..t.rank {
                        // eliminated entries agree only modulo the structure identities
                        if t.lambda(i, j, k).nterms() == 1 {
                            assert_eq!(t.lambda(i, j, k), t.lambda(j, i, k));
                            assert_eq!(t.lambda(i, j, k), t.lambda(s[i], s[j], s[k]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pair_12_contains_displayed_generator() {
        let t = build_template(4, InvolutionType::A41, Assumption::None).unwrap();
        let s = emit_pair_polys(&t, 1, 2);
        let g = parse_poly(&t.ring, "-x2*k2+x4*k1").unwrap();
        assert!(s.contains(&g));
        assert_eq!(s.len(), 8);
    }

    #[test]
    fn traces_4a1_reduce_to_x1_eq_x2() {
        let t = build_template_with(4, InvolutionType::A41, Assumption::Pseudocyclic, &TemplateOptions::new(DegreeSymbols::Homogeneous))
            .unwrap();
        let tr = trace_constraints(&t, &TraceSource::Pseudocyclic).unwrap();
        assert_eq!(tr.len(), 1);
        assert_eq!(tr.polys()[0], parse_poly(&t.ring, "x1-x2").unwrap());
    }

    #[test]
    fn rank2_trace_is_empty() {
        let t = build_template(2, InvolutionType::R2, Assumption::Pseudocyclic).unwrap();
        assert!(trace_constraints(&t, &TraceSource::Pseudocyclic).unwrap().is_empty());
    }
}
