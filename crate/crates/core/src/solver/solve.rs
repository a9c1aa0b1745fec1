use super::SolveError;
use crate::exactpoly::{buchberger_with, univariate::UPoly, GbConfig, GroebnerBasis, MPoly, Monomial, MonomialOrder, PolyError, PolySet, Ring};
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

/// A full integer assignment to the variables of a ring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Solution {
    pub names: Vec<String>,
    #[serde(with = "int_strs")]
    pub values: Vec<Integer>,
}

mod int_strs {
    use rug::Integer;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Integer], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Integer>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

impl Solution {
    pub fn get(&self, name: &str) -> Option<&Integer> {
        self.names.iter().position(|n| n == name).map(|i| &self.values[i])
    }

    /// `name=value` pairs in ring order.
    pub fn render(&self) -> String {
        self.names.iter().zip(&self.values).map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(",")
    }
}

fn map_err(e: PolyError) -> SolveError {
    match e {
        PolyError::ResourceLimit(s) => SolveError::Cap(s),
        other => SolveError::Poly(other),
    }
}

/// Variables of `ring` occurring in some polynomial.
fn occurring(polys: &[MPoly], nvars: usize) -> Vec<usize> {
    let mut seen = vec![false; nvars];
    for p in polys {
        for v in p.variables() {
            seen[v] = true;
        }
    }
    (0..nvars).filter(|&v| seen[v]).collect()
}

fn integer_roots(u: &UPoly, nonneg: bool) -> Vec<Integer> {
    if nonneg {
        let b = u.root_bound();
        u.integer_roots_in(&Integer::new(), &b)
    } else {
        u.integer_roots()
    }
}

const MAX_ELIMINANT_DEGREE: usize = 4096;

/// Minimal polynomial of `x_v` modulo a zero-dimensional ideal, found as
/// the first linear dependence among the normal forms of `1, x_v, x_v^2, ...`.
pub fn univariate_eliminant(g: &GroebnerBasis, v: usize, max_degree: usize) -> Option<UPoly> {
    let ring = g.ring().clone();
    let x = MPoly::var(&ring, v);
    let mut cols: HashMap<Monomial, usize> = HashMap::new();
    // echelon rows: (pivot, dense vector, combination of powers)
    let mut rows: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
    let mut nf = g.normal_form(&MPoly::one(&ring));
    for k in 0..=max_degree {
        let mut vec: Vec<Rational> = Vec::new();
        for (m, c) in nf.terms() {
            let n = cols.len();
            let idx = *cols.entry(m.clone()).or_insert(n);
            if vec.len() <= idx {
                vec.resize(idx + 1, Rational::new());
            }
            vec[idx] = c.clone();
        }
        let mut combo = vec![Rational::new(); k + 1];
        combo[k] = Rational::from(1);
        for (piv, rv, rc) in &rows {
            let a = vec.get(*piv).cloned().unwrap_or_default();
            if a == 0 {
                continue;
            }
            if vec.len() < rv.len() {
                vec.resize(rv.len(), Rational::new());
            }
            for (i, r) in rv.iter().enumerate() {
                if *r != 0 {
                    vec[i] -= Rational::from(&a * r);
                }
            }
            for (i, r) in rc.iter().enumerate() {
                if *r != 0 {
                    combo[i] -= Rational::from(&a * r);
                }
            }
        }
        match vec.iter().position(|c| *c != 0) {
            None => {
                let l = combo.iter().fold(Integer::from(1), |acc, x| acc.lcm(x.denom()));
                return Some(UPoly::new(combo.into_iter().map(|x| (x * &l).into_numer_denom().0).collect()).primitive_part());
            }
            Some(piv) => {
                let inv = Rational::from(1) / vec[piv].clone();
                for c in vec.iter_mut() {
                    *c *= &inv;
                }
                for c in combo.iter_mut() {
                    *c *= &inv;
                }
                rows.push((piv, vec, combo));
            }
        }
        nf = g.normal_form(&(&nf * &x));
    }
    None
}

fn solve_rec(ring: &Arc<Ring>, polys: Vec<MPoly>, values: &mut Vec<Option<Integer>>, nonneg: &[bool], gb: &GbConfig, out: &mut Vec<Vec<Option<Integer>>>) -> Result<(), SolveError> {
    let polys: Vec<MPoly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    if polys.iter().any(|p| p.is_constant()) {
        return Ok(());
    }
    let free = occurring(&polys, ring.nvars());
    if free.is_empty() {
        out.push(values.clone());
        return Ok(());
    }
    // work in the ring of occurring variables only
    let sub = Ring::new(free.iter().map(|&v| ring.name(v).to_string()));
    let mut map = vec![None; ring.nvars()];
    for (i, &v) in free.iter().enumerate() {
        map[v] = Some(i);
    }
    let set = PolySet::from_polys(&sub, polys.iter().map(|p| p.remap(&sub, &map)));
    let g = buchberger_with(&set, &MonomialOrder::grevlex(free.len()), gb).map_err(map_err)?;
    if g.is_unit() {
        return Ok(());
    }
    if !g.is_zero_dimensional() {
        return Err(SolveError::PositiveDimensional(free.iter().map(|&v| ring.name(v).to_string()).collect()));
    }
    // branch on the variable with the fewest admissible integer roots
    let mut best: Option<(usize, Vec<Integer>)> = None;
    for local in 0..free.len() {
        let u = univariate_eliminant(&g, local, MAX_ELIMINANT_DEGREE).ok_or_else(|| SolveError::Cap("eliminant degree".into()))?;
        let roots = integer_roots(&u, nonneg[free[local]]);
        let better = best.as_ref().is_none_or(|(_, r)| roots.len() < r.len());
        if better {
            let empty = roots.is_empty();
            best = Some((local, roots));
            if empty {
                return Ok(());
            }
        }
    }
    let (local, roots) = best.expect("at least one free variable");
    let v = free[local];
    let back: Vec<Option<usize>> = free.iter().map(|&x| Some(x)).collect();
    let basis: Vec<MPoly> = g.polys().iter().map(|p| p.remap(ring, &back)).collect();
    for root in roots {
        let q = Rational::from(root.clone());
        values[v] = Some(root);
        let next: Vec<MPoly> = basis.iter().map(|p| p.substitute_value(v, &q)).collect();
        solve_rec(ring, next, values, nonneg, gb, out)?;
        values[v] = None;
    }
    Ok(())
}

/// All integer points of `f` extending `partial`, for the variables that
/// occur in `f`. Variables in `nonneg` are restricted to `x ≥ 0`;
/// variables that do not occur in `f` stay unassigned (`None`).
pub fn specialize_and_solve_partial(f: &PolySet, partial: &[(usize, Integer)], nonneg: &[usize], gb: &GbConfig) -> Result<Vec<Vec<Option<Integer>>>, SolveError> {
    let ring = f.ring().clone();
    let n = ring.nvars();
    let mut values: Vec<Option<Integer>> = vec![None; n];
    let vals: Vec<(usize, Rational)> = partial.iter().map(|(v, x)| (*v, Rational::from(x.clone()))).collect();
    for (v, x) in partial {
        values[*v] = Some(x.clone());
    }
    let mut mask = vec![false; n];
    for &v in nonneg {
        mask[v] = true;
    }
    let polys: Vec<MPoly> = f.polys().iter().map(|p| p.substitute_values(&vals)).collect();
    let mut out = Vec::new();
    solve_rec(&ring, polys, &mut values, &mask, gb, &mut out)?;
    out.sort();
    Ok(out)
}

/// Complete list of integer solutions of `f` extending `partial`.
/// Every variable of the ring must be fixed by `partial` or occur in `f`.
pub fn specialize_and_solve(f: &PolySet, partial: &[(usize, Integer)], nonneg: &[usize], gb: &GbConfig) -> Result<Vec<Solution>, SolveError> {
    let ring = f.ring();
    let names: Vec<String> = ring.names().to_vec();
    let raw = specialize_and_solve_partial(f, partial, nonneg, gb)?;
    let mut out = Vec::with_capacity(raw.len());
    for vals in raw {
        let missing: Vec<String> = vals.iter().enumerate().filter(|(_, x)| x.is_none()).map(|(i, _)| names[i].clone()).collect();
        if !missing.is_empty() {
            return Err(SolveError::PositiveDimensional(missing));
        }
        let values: Vec<Integer> = vals.into_iter().map(|x| x.unwrap()).collect();
        debug_assert!(f.polys().iter().all(|p| p.eval_int(&values) == 0));
        out.push(Solution { names: names.clone(), values });
    }
    Ok(out)
}
