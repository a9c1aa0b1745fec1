use super::monomial::Monomial;
use super::poly::MPoly;
use super::polyset::PolySet;
use rug::{Integer, Rational};
use std::collections::{BTreeMap, HashMap};

/// Subset of `f` (in input order) forming a basis of its Q-linear span.
pub fn rational_span_basis(f: &PolySet) -> PolySet {
    let mut pivots: BTreeMap<Monomial, MPoly> = BTreeMap::new();
    let mut out = PolySet::with_order(f.ring(), f.order().clone());
    for (p, tag) in f.iter() {
        let mut r = p.clone();
        loop {
            let top = match r.terms().last() {
                Some((m, _)) => m.clone(),
                None => break,
            };
            match pivots.get(&top) {
                Some(row) => {
                    let c = r.coefficient(&top).unwrap().clone();
                    r = &r - &row.scale(&c);
                }
                None => break,
            }
        }
        if let Some((m, c)) = r.terms().last() {
            let m = m.clone();
            let inv = Rational::from(1) / c.clone();
            pivots.insert(m, r.scale(&inv));
            out.insert(p.clone(), tag);
        }
    }
    out
}

/// Rank of the monomial-coefficient matrix of `polys`, computed with
/// fraction-free (Bareiss) elimination over the integers.
pub fn coefficient_rank(polys: &[MPoly]) -> usize {
    let mut cols: HashMap<Monomial, usize> = HashMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let n = cols.len();
            cols.entry(m.clone()).or_insert(n);
        }
    }
    let ncols = cols.len();
    let mut a: Vec<Vec<Integer>> = polys
        .iter()
        .map(|p| {
            let l = p.denominator_lcm();
            let mut row = vec![Integer::new(); ncols];
            for (m, c) in p.terms() {
                row[cols[m]] = Rational::from(c * &l).into_numer_denom().0;
            }
            row
        })
        .collect();
    let nrows = a.len();
    let mut rank = 0;
    let mut prev = Integer::from(1);
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let piv = (rank..nrows).find(|&r| a[r][col] != 0);
        let Some(piv) = piv else { continue };
        a.swap(rank, piv);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = Integer::from(&a[rank][col] * &a[r][c]) - Integer::from(&a[r][col] * &a[rank][c]);
                a[r][c] = v / &prev;
            }
            a[r][col] = Integer::new();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, Ring};

    #[test]
    fn span_examples() {
        let r = Ring::new(["x", "y"]);
        let f = parse_poly(&r, "x^2-y").unwrap();
        let mut s = PolySet::new(&r);
        s.insert(f.clone(), "a");
        // PolySet already dedupes scalar multiples; build the span from raw polys
        assert_eq!(rational_span_basis(&s).len(), 1);
        assert!(rational_span_basis(&PolySet::new(&r)).is_empty());
        let polys = ["x+y", "x-y", "x", "y^2", "x+y^2"].map(|t| parse_poly(&r, t).unwrap());
        let s = PolySet::from_polys(&r, polys.clone());
        let b = rational_span_basis(&s);
        assert_eq!(b.len(), 3);
        assert_eq!(coefficient_rank(&polys), 3);
        assert_eq!(coefficient_rank(&[f.clone(), f.scale(&Rational::from(2))]), 1);
    }
}
