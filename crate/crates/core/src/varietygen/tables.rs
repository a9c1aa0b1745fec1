use rayon::prelude::*;
use rug::Rational;
use serde::{Deserialize, Serialize};

/// Rationalized character table of a rank-5 scheme with one rational
/// nontrivial character (multiplicity `m1`) and one Galois orbit of three
/// characters (each of multiplicity `m2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalCharTable {
    pub n: i64,
    pub m1: i64,
    pub m2: i64,
    pub degrees: [i64; 4],
    pub a: [i64; 4],
    pub t: [i64; 4],
}

impl RationalCharTable {
    pub fn columns(&self) -> [(i64, i64, i64); 4] {
        let mut c = [(0, 0, 0); 4];
        for j in 0..4 {
            c[j] = (self.degrees[j], self.a[j], self.t[j]);
        }
        c
    }

    /// Check every defining identity exactly.
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        if self.m1 < 1 || self.m2 < 1 || self.degrees.iter().any(|&d| d < 1) {
            return false;
        }
        if self.degrees.iter().sum::<i64>() != n - 1 || self.m1 + 3 * self.m2 != n - 1 {
            return false;
        }
        if self.a.iter().sum::<i64>() != -1 || self.t.iter().sum::<i64>() != -3 {
            return false;
        }
        for j in 0..4 {
            let (d, a, t) = (self.degrees[j], self.a[j], self.t[j]);
            if d + self.m1 * a + self.m2 * t != 0 || a.abs() > d || t.abs() > 3 * d {
                return false;
            }
        }
        let mut s_aa = Rational::new();
        let mut s_at = Rational::new();
        for j in 0..4 {
            let d = Rational::from(self.degrees[j]);
            s_aa += Rational::from(self.a[j] * self.a[j]) / &d;
            s_at += Rational::from(self.a[j] * self.t[j]) / &d;
        }
        s_aa + 1 == Rational::from((n, self.m1)) && s_at + 3 == 0
    }
}

fn tables_for(n: i64, m2: i64) -> Vec<RationalCharTable> {
    let m1 = n - 1 - 3 * m2;
    if m1 < 1 {
        return Vec::new();
    }
    let target = Rational::from((n, m1)) - 1;
    // feasible columns (δ, a, t) with t solved from δ + m1 a + m2 t = 0
    let mut cols: Vec<(i64, i64, i64)> = Vec::new();
    for d in 1..=n - 4 {
        for a in -d..=d {
            let num = d + m1 * a;
            if num % m2 != 0 {
                continue;
            }
            let t = -num / m2;
            if t.abs() <= 3 * d {
                cols.push((d, a, t));
            }
        }
    }
    cols.sort();
    let mut out = Vec::new();
    let nc = cols.len();
    let weight = |c: &(i64, i64, i64)| Rational::from((c.1 * c.1, c.0));
    for i0 in 0..nc {
        let c0 = cols[i0];
        if 4 * c0.0 > n - 1 {
            break;
        }
        let w0 = weight(&c0);
        if w0 > target {
            continue;
        }
        for i1 in i0..nc {
            let c1 = cols[i1];
            if c0.0 + 3 * c1.0 > n - 1 {
                break;
            }
            let w1 = Rational::from(&w0 + &weight(&c1));
            if w1 > target {
                continue;
            }
            for i2 in i1..nc {
                let c2 = cols[i2];
                let rest = n - 1 - c0.0 - c1.0 - c2.0;
                if rest < c2.0 {
                    break;
                }
                let w2 = Rational::from(&w1 + &weight(&c2));
                if w2 > target {
                    continue;
                }
                let a3 = -1 - c0.1 - c1.1 - c2.1;
                let c3 = (rest, a3, -(rest + m1 * a3) / m2);
                if (rest + m1 * a3) % m2 != 0 || c3 < c2 {
                    continue;
                }
                if cols[i2..].binary_search(&c3).is_err() {
                    continue;
                }
                let tab = RationalCharTable {
                    n,
                    m1,
                    m2,
                    degrees: [c0.0, c1.0, c2.0, c3.0],
                    a: [c0.1, c1.1, c2.1, c3.1],
                    t: [c0.2, c1.2, c2.2, c3.2],
                };
                if tab.is_valid() {
                    out.push(tab);
                }
            }
        }
    }
    out
}

/// Every rationalized character table of order `n`, sorted by
/// `(m1, m2, columns)` with columns in nondecreasing `(δ, a, t)` order.
pub fn enumerate_rational_tables(n: i64) -> Vec<RationalCharTable> {
    if n < 5 {
        return Vec::new();
    }
    let mut out: Vec<RationalCharTable> = (1..=(n - 2) / 3).into_par_iter().flat_map_iter(|m2| tables_for(n, m2)).collect();
    out.sort_by(|x, y| (x.m1, x.m2, x.columns()).cmp(&(y.m1, y.m2, y.columns())));
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(n: i64) -> Vec<RationalCharTable> {
        let mut out = Vec::new();
        for m2 in 1..=(n - 2) / 3 {
            let m1 = n - 1 - 3 * m2;
            if m1 < 1 {
                continue;
            }
            for d0 in 1..n {
                for d1 in d0..n {
                    for d2 in d1..n {
                        let d3 = n - 1 - d0 - d1 - d2;
                        if d3 < d2 {
                            continue;
                        }
                        let ds = [d0, d1, d2, d3];
                        let mut cands: Vec<Vec<(i64, i64)>> = Vec::new();
                        for &d in &ds {
                            let mut v = Vec::new();
                            for a in -d..=d {
                                for t in -3 * d..=3 * d {
                                    if d + m1 * a + m2 * t == 0 {
                                        v.push((a, t));
                                    }
                                }
                            }
                            cands.push(v);
                        }
                        for p0 in &cands[0] {
                            for p1 in &cands[1] {
                                for p2 in &cands[2] {
                                    let want = -1 - p0.0 - p1.0 - p2.0;
                                    for p3 in cands[3].iter().filter(|p| p.0 == want) {
                                        let tab = RationalCharTable {
                                            n,
                                            m1,
                                            m2,
                                            degrees: ds,
                                            a: [p0.0, p1.0, p2.0, p3.0],
                                            t: [p0.1, p1.1, p2.1, p3.1],
                                        };
                                        let c = tab.columns();
                                        if c.windows(2).all(|w| w[0] <= w[1]) && tab.is_valid() {
                                            out.push(tab);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out.sort_by(|x, y| (x.m1, x.m2, x.columns()).cmp(&(y.m1, y.m2, y.columns())));
        out
    }

    #[test]
    fn matches_brute_force() {
        for n in 5..=40 {
            assert_eq!(enumerate_rational_tables(n), brute(n), "n={}", n);
        }
    }

    #[test]
    fn order_35_contains_known_table() {
        let tabs = enumerate_rational_tables(35);
        let want = RationalCharTable { n: 35, m1: 4, m2: 10, degrees: [4, 6, 12, 12], a: [-1, 6, -3, -3], t: [0, -3, 0, 0] };
        assert!(want.is_valid());
        assert!(tabs.contains(&want));
        for t in &tabs {
            for j in 0..4 {
                assert_eq!(t.degrees[j] + t.m1 * t.a[j] + t.m2 * t.t[j], 0);
            }
        }
    }

    #[test]
    fn order_5_all_degrees_one() {
        for t in enumerate_rational_tables(5) {
            assert_eq!(t.degrees, [1, 1, 1, 1]);
        }
    }
}
