use super::monomial::Monomial;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// A multiplicative total well-order on monomials.
///
/// `priority` lists variable ids from the most to the least significant.
/// Variables missing from `priority` are appended in id order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex { priority: Vec<usize> },
    GrevLex { priority: Vec<usize> },
    /// Weight vector first, ties broken by grevlex on `priority`.
    Weighted { weights: Vec<u32>, priority: Vec<usize> },
}

impl MonomialOrder {
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder::Lex { priority: (0..nvars).collect() }
    }

    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder::GrevLex { priority: (0..nvars).collect() }
    }

    pub fn lex_with(priority: Vec<usize>, nvars: usize) -> Self {
        MonomialOrder::Lex { priority: complete(priority, nvars) }
    }

    pub fn grevlex_with(priority: Vec<usize>, nvars: usize) -> Self {
        MonomialOrder::GrevLex { priority: complete(priority, nvars) }
    }

    pub fn weighted(weights: Vec<u32>, priority: Vec<usize>) -> Self {
        let n = weights.len();
        MonomialOrder::Weighted { weights, priority: complete(priority, n) }
    }

    /// Block order eliminating `eliminate`: those variables outweigh the
    /// rest, grevlex inside each block.
    pub fn elimination(eliminate: &[usize], keep_priority: &[usize], nvars: usize) -> Self {
        let mut weights = vec![0u32; nvars];
        for &v in eliminate {
            weights[v] = 1;
        }
        let mut prio: Vec<usize> = eliminate.to_vec();
        prio.extend_from_slice(keep_priority);
        Self::weighted(weights, prio)
    }

    pub fn priority(&self) -> &[usize] {
        match self {
            MonomialOrder::Lex { priority }
            | MonomialOrder::GrevLex { priority }
            | MonomialOrder::Weighted { priority, .. } => priority,
        }
    }

    /// Same order on a ring where variable `i` maps to `map[i]`.
    pub fn remap(&self, map: &[Option<usize>], nvars: usize) -> Self {
        let prio: Vec<usize> = self.priority().iter().filter_map(|&v| map.get(v).copied().flatten()).collect();
        match self {
            MonomialOrder::Lex { .. } => Self::lex_with(prio, nvars),
            MonomialOrder::GrevLex { .. } => Self::grevlex_with(prio, nvars),
            MonomialOrder::Weighted { weights, .. } => {
                let mut w = vec![0u32; nvars];
                for (i, &wi) in weights.iter().enumerate() {
                    if let Some(Some(j)) = map.get(i) {
                        w[*j] = wi;
                    }
                }
                Self::weighted(w, prio)
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex { priority } => {
                for &v in priority {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex { priority } => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => grevlex_tie(priority, a, b),
                    o => o,
                }
            }
            MonomialOrder::Weighted { weights, priority } => {
                let wa: u64 = weights.iter().zip(a.exponents()).map(|(w, e)| *w as u64 * *e as u64).sum();
                let wb: u64 = weights.iter().zip(b.exponents()).map(|(w, e)| *w as u64 * *e as u64).sum();
                match wa.cmp(&wb) {
                    Ordering::Equal => match a.degree().cmp(&b.degree()) {
                        Ordering::Equal => grevlex_tie(priority, a, b),
                        o => o,
                    },
                    o => o,
                }
            }
        }
    }
}

fn grevlex_tie(priority: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    for &v in priority.iter().rev() {
        match a.exp(v).cmp(&b.exp(v)) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

fn complete(mut priority: Vec<usize>, nvars: usize) -> Vec<usize> {
    let mut seen = vec![false; nvars];
    priority.retain(|&v| v < nvars && !std::mem::replace(&mut seen[v], true));
    for v in 0..nvars {
        if !seen[v] {
            priority.push(v);
        }
    }
    priority
}
