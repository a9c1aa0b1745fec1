use super::order::MonomialOrder;
use super::poly::MPoly;
use super::polyset::PolySet;
use super::PolyError;
use rug::Rational;
use serde::{Deserialize, Serialize};

/// `var := expr`, derived from the generator tagged `source`.
#[derive(Clone, Debug)]
pub struct Substitution {
    pub var: usize,
    pub expr: MPoly,
    pub source: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct LinearReduceOptions {
    /// Variables that must survive the elimination.
    pub keep: Vec<usize>,
    /// Stop after this many substitutions.
    pub max_steps: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct LinearReduction {
    /// Substitutions in the order they were applied; each expression is in
    /// terms of the variables alive at that moment.
    pub substitutions: Vec<Substitution>,
    pub remaining: PolySet,
}

impl LinearReduction {
    /// Apply the whole chain to `p`.
    pub fn apply(&self, p: &MPoly) -> MPoly {
        let mut q = p.clone();
        for s in &self.substitutions {
            q = q.substitute(s.var, &s.expr);
        }
        q
    }

    /// Every eliminated variable expressed in the surviving variables.
    pub fn resolved(&self) -> Vec<(usize, MPoly)> {
        let n = self.substitutions.len();
        let mut out: Vec<(usize, MPoly)> = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = self.substitutions[i].expr.clone();
            for s in &self.substitutions[i + 1..] {
                e = e.substitute(s.var, &s.expr);
            }
            out.push((self.substitutions[i].var, e));
        }
        out
    }

    pub fn eliminated(&self) -> Vec<usize> {
        self.substitutions.iter().map(|s| s.var).collect()
    }
}

/// Linear elimination with the default options.
pub fn linear_reduce(f: &PolySet, positives: &[usize]) -> Result<LinearReduction, PolyError> {
    linear_reduce_with(f, positives, &LinearReduceOptions::default())
}

fn cancel_positive_factors(p: &MPoly, positives: &[usize]) -> MPoly {
    let mut q = p.clone();
    for &v in positives {
        let k = q.var_valuation(v);
        if k > 0 {
            q = q.divide_by_var(v, k);
        }
    }
    q
}

fn clean(set: &PolySet, positives: &[usize], order: &MonomialOrder) -> Result<PolySet, PolyError> {
    let mut out = PolySet::with_order(set.ring(), order.clone());
    for (p, tag) in set.iter() {
        let q = cancel_positive_factors(p, positives);
        if q.is_zero() {
            continue;
        }
        if q.is_constant() {
            return Err(PolyError::Inconsistent(if tag.is_empty() { q.to_string() } else { tag.to_string() }));
        }
        out.insert(q, tag);
    }
    Ok(out)
}

/// Repeatedly cancel factors of positive variables and solve generators
/// that are linear in some variable with a constant coefficient.
///
/// Candidate choice: non-positive variables first, then unit
/// coefficients, then fewest terms, then lowest variable id.
pub fn linear_reduce_with(f: &PolySet, positives: &[usize], opts: &LinearReduceOptions) -> Result<LinearReduction, PolyError> {
    let ring = f.ring().clone();
    let order = MonomialOrder::grevlex(ring.nvars());
    let mut cur = clean(f, positives, &order)?;
    let mut subs: Vec<Substitution> = Vec::new();
    let mut alive_pos: Vec<usize> = positives.to_vec();
    loop {
        if let Some(cap) = opts.max_steps {
            if subs.len() >= cap {
                break;
            }
        }
        let mut best: Option<((bool, bool, usize, usize), usize, usize, Rational)> = None;
        for (pi, p) in cur.polys().iter().enumerate() {
            for v in p.variables() {
                if opts.keep.contains(&v) {
                    continue;
                }
                if let Some(c) = p.linear_constant_coefficient(v) {
                    let key = (alive_pos.contains(&v), c.clone().abs() != 1, p.nterms(), v);
                    if best.as_ref().map(|b| key < b.0).unwrap_or(true) {
                        best = Some((key, pi, v, c));
                    }
                }
            }
        }
        let Some((_, pi, v, c)) = best else { break };
        let p = cur.polys()[pi].clone();
        let tag = cur.tags()[pi].clone();
        // p = c*v + h  =>  v = -h/c
        let h = &p - &MPoly::var(&ring, v).scale(&c);
        let expr = h.scale(&(Rational::from(-1) / c));
        log::debug!("linear_reduce: {} := {}", ring.name(v), expr);
        let next = cur.map(|q| q.substitute(v, &expr));
        alive_pos.retain(|&x| x != v);
        subs.push(Substitution { var: v, expr, source: tag });
        cur = clean(&next, &alive_pos, &order)?;
    }
    Ok(LinearReduction { substitutions: subs, remaining: cur })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, Ring};

    #[test]
    fn trivial_linear() {
        let r = Ring::new(["x"]);
        let s = PolySet::from_polys(&r, [parse_poly(&r, "x-3").unwrap()]);
        let red = linear_reduce(&s, &[]).unwrap();
        assert_eq!(red.substitutions.len(), 1);
        assert_eq!(red.substitutions[0].expr.constant_value().unwrap(), 3);
        assert!(red.remaining.is_empty());
    }

    #[test]
    fn cancels_positive_factor() {
        let r = Ring::new(["x", "k"]);
        let s = PolySet::from_polys(&r, [parse_poly(&r, "k^2-k-x*k").unwrap(), parse_poly(&r, "x^2-4").unwrap()]);
        let red = linear_reduce(&s, &[1]).unwrap();
        assert_eq!(red.substitutions[0].var, 0);
        assert_eq!(red.substitutions[0].expr, parse_poly(&r, "k-1").unwrap());
        assert_eq!(red.remaining.len(), 1);
        assert_eq!(red.remaining.polys()[0], parse_poly(&r, "k^2-2*k-3").unwrap());
    }

    #[test]
    fn inconsistent() {
        let r = Ring::new(["x", "y"]);
        let s = PolySet::from_polys(&r, [parse_poly(&r, "x-y").unwrap(), parse_poly(&r, "x-y-1").unwrap()]);
        assert!(matches!(linear_reduce(&s, &[]), Err(PolyError::Inconsistent(_))));
    }
}
