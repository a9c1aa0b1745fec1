//! Dense univariate polynomials over the integers with exact real-root
//! isolation by Sturm sequences.

use super::monomial::Monomial;
use super::poly::{MPoly, Ring};
use rug::ops::DivRounding;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// `c[i]` is the coefficient of `x^i`; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UPoly {
    #[serde(with = "int_vec")]
    c: Vec<Integer>,
}

mod int_vec {
    use rug::Integer;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Integer], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Integer>, D::Error> {
        let strs: Vec<String> = Vec::deserialize(d)?;
        strs.iter().map(|s| s.parse::<Integer>().map_err(serde::de::Error::custom)).collect()
    }
}

impl UPoly {
    pub fn new(mut c: Vec<Integer>) -> Self {
        while c.last().map(|x| *x == 0).unwrap_or(false) {
            c.pop();
        }
        UPoly { c }
    }

    /// Coefficients from the constant term upwards.
    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Integer::from(x)).collect())
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(a: impl Into<Integer>) -> Self {
        Self::new(vec![a.into()])
    }

    /// `x - a`
    pub fn linear_root(a: impl Into<Integer>) -> Self {
        let a: Integer = a.into();
        Self::new(vec![-a, Integer::from(1)])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn lc(&self) -> Integer {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        let mut acc = Integer::new();
        for a in self.c.iter().rev() {
            acc *= x;
            acc += a;
        }
        acc
    }

    pub fn eval_q(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for a in self.c.iter().rev() {
            acc *= x;
            acc += a;
        }
        acc
    }

    /// Sign of the value at a rational point, without forming the rational.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let (p, q) = (x.numer(), x.denom());
        // sum c_i p^i q^(d-i); q > 0 so the sign is preserved
        let mut acc = Integer::new();
        let mut qpow = Integer::from(1);
        let d = self.degree();
        let mut terms: Vec<Integer> = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            terms.push(qpow.clone());
            qpow *= q;
        }
        // Horner in p with q powers: acc = c_d; acc = acc*p + c_{i} q^{d-i}
        for (k, a) in self.c.iter().enumerate().rev() {
            acc *= p;
            acc += Integer::from(a * &terms[d - k]);
        }
        acc.cmp0() as i32
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|a| Integer::from(-a)).collect() }
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Integer::new(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += Integer::from(a * b);
            }
        }
        UPoly::new(c)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::constant(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, k: &Integer) -> UPoly {
        UPoly::new(self.c.iter().map(|a| Integer::from(a * k)).collect())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(i, a)| Integer::from(a * i as u64)).collect())
    }

    pub fn content(&self) -> Integer {
        let mut g = Integer::new();
        for a in &self.c {
            g.gcd_mut(a);
        }
        g
    }

    /// Content removed and leading coefficient positive.
    pub fn primitive_part(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc() < 0 {
            g = -g;
        }
        UPoly { c: self.c.iter().map(|a| Integer::from(a.div_exact_ref(&g))).collect() }
    }

    /// Pseudo-remainder of `self` by `d`.
    pub fn prem(&self, d: &UPoly) -> UPoly {
        assert!(!d.is_zero());
        let mut r = self.clone();
        let dd = d.degree();
        let lc = d.lc();
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let rl = r.lc();
            let mut t = vec![Integer::new(); shift + 1];
            t[shift] = rl;
            r = r.scale(&lc).sub(&d.mul(&UPoly::new(t)));
        }
        r
    }

    /// Exact quotient over Q if it has integer coefficients.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem_q(d);
        if r.iter().any(|x| *x != 0) || q.iter().any(|x| *x.denom() != 1) {
            return None;
        }
        Some(UPoly::new(q.into_iter().map(|x| x.into_numer_denom().0).collect()))
    }

    /// Division over Q; returns quotient and remainder coefficient vectors.
    pub fn div_rem_q(&self, d: &UPoly) -> (Vec<Rational>, Vec<Rational>) {
        assert!(!d.is_zero());
        let mut r: Vec<Rational> = self.c.iter().map(Rational::from).collect();
        let dd = d.degree();
        if r.len() <= dd {
            return (Vec::new(), r);
        }
        let mut q = vec![Rational::new(); r.len() - dd];
        let lc = Rational::from(d.lc());
        for k in (0..q.len()).rev() {
            let coef = Rational::from(&r[k + dd] / &lc);
            if coef != 0 {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= Rational::from(&coef * b);
                }
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (q, r)
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.primitive_part();
        let mut b = o.primitive_part();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Product of the distinct irreducible factors, primitive.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree() == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        let pp = self.primitive_part();
        if g.degree() == 0 {
            return pp;
        }
        // over Q the quotient exists; clear to a primitive integer polynomial
        let (q, _) = pp.div_rem_q(&g);
        let l = q.iter().fold(Integer::from(1), |acc, x| acc.lcm(x.denom()));
        UPoly::new(q.into_iter().map(|x| (x * &l).into_numer_denom().0).collect()).primitive_part()
    }

    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            // negative remainder; only signs matter so positive rescaling is fine
            let a = &seq[n - 2];
            let b = &seq[n - 1];
            let lc = b.lc();
            let mut r = a.prem(b);
            if lc < 0 && (a.degree() - b.degree()) % 2 == 0 {
                r = r.neg();
            }
            let r = r.neg();
            let g = r.content();
            let r = if g > 1 { UPoly { c: r.c.iter().map(|x| Integer::from(x.div_exact_ref(&g))).collect() } } else { r };
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq
    }

    /// Cauchy bound: every real root lies in `(-B, B)`.
    pub fn root_bound(&self) -> Integer {
        let lc = Integer::from(self.lc().abs_ref());
        let mut m = Integer::new();
        for a in &self.c[..self.c.len().saturating_sub(1)] {
            let q = Integer::from(a.abs_ref()).div_ceil(lc.clone());
            if q > m {
                m = q;
            }
        }
        m + 1
    }

    /// Real roots (distinct), each as a half-open interval `(lo, hi]`
    /// containing exactly one root; exact root `r` is reported as `(r, r)`.
    pub fn isolate_real_roots(&self) -> Vec<(Rational, Rational)> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let s = self.squarefree_part();
        let seq = s.sturm_sequence();
        let b = Rational::from(s.root_bound());
        let lo = Rational::from(-&b);
        let mut out = Vec::new();
        let vlo = variations(&seq, &lo);
        let vhi = variations(&seq, &b);
        isolate_rec(&s, &seq, lo, vlo, b, vhi, &mut out);
        out.sort();
        out
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count_roots(&self, lo: &Rational, hi: &Rational) -> usize {
        let s = self.squarefree_part();
        let seq = s.sturm_sequence();
        (variations(&seq, lo) - variations(&seq, hi)) as usize
    }

    /// Distinct integer roots, ascending.
    pub fn integer_roots(&self) -> Vec<Integer> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let b = self.root_bound();
        self.integer_roots_in(&Integer::from(-&b), &b)
    }

    /// Distinct integer roots in `[lo, hi]`, ascending.
    pub fn integer_roots_in(&self, lo: &Integer, hi: &Integer) -> Vec<Integer> {
        if self.is_zero() || lo > hi {
            return Vec::new();
        }
        if self.degree() == 0 {
            return Vec::new();
        }
        let s = self.squarefree_part();
        let width = Integer::from(hi - lo);
        if width <= 64 {
            let mut out = Vec::new();
            let mut x = lo.clone();
            while x <= *hi {
                if s.eval(&x) == 0 {
                    out.push(x.clone());
                }
                x += 1;
            }
            return out;
        }
        // exact divisor test on the trailing coefficient combined with Sturm pruning
        let seq = s.sturm_sequence();
        let l = Rational::from(lo - 1u32);
        let h = Rational::from(hi.clone());
        let mut out = Vec::new();
        let vl = variations(&seq, &l);
        let vh = variations(&seq, &h);
        int_rec(&s, &seq, l, vl, h, vh, &mut out);
        out.sort();
        out
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for (lo, hi) in self.isolate_real_roots() {
            if lo == hi {
                out.push(lo);
                continue;
            }
            if let Some(r) = rational_root_in(self, &lo, &hi) {
                out.push(r);
            }
        }
        out.sort();
        out
    }

    /// Refine an isolating interval `(lo, hi]` to width at most `2^-bits`.
    pub fn refine(&self, lo: &Rational, hi: &Rational, bits: u32) -> (Rational, Rational) {
        let s = self.squarefree_part();
        let seq = s.sturm_sequence();
        let mut lo = lo.clone();
        let mut hi = hi.clone();
        let eps = Rational::from((Integer::from(1), Integer::from(1) << bits));
        let mut vlo = variations(&seq, &lo);
        while Rational::from(&hi - &lo) > eps {
            let mid = Rational::from(&lo + &hi) / 2u32;
            if s.sign_at(&mid) == 0 {
                return (mid.clone(), mid);
            }
            let vm = variations(&seq, &mid);
            if vlo - vm == 1 {
                hi = mid;
            } else {
                lo = mid;
                vlo = vm;
            }
        }
        (lo, hi)
    }

    /// Power sums `p_0..p_{k}` of the roots (with multiplicity).
    pub fn power_sums(&self, k: usize) -> Vec<Rational> {
        let d = self.degree();
        let lc = Rational::from(self.lc());
        // e_i = (-1)^i c_{d-i} / c_d
        let e: Vec<Rational> = (0..=d)
            .map(|i| {
                let v = Rational::from(&self.c[d - i]) / lc.clone();
                if i % 2 == 1 {
                    -v
                } else {
                    v
                }
            })
            .collect();
        let mut p: Vec<Rational> = vec![Rational::from(d as u64)];
        for s in 1..=k {
            let mut acc = Rational::new();
            for i in 1..s.min(d + 1) {
                let term = Rational::from(&e[i] * &p[s - i]);
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            if s <= d {
                let term = Rational::from(&e[s] * s as u64);
                if s % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            p.push(acc);
        }
        p
    }

    pub fn discriminant(&self) -> Integer {
        // Res(p, p') / ((-1)^{d(d-1)/2} lc)
        let d = self.degree();
        let res = resultant(self, &self.derivative());
        let sign = if (d * (d.saturating_sub(1)) / 2) % 2 == 1 { -1 } else { 1 };
        let den = self.lc() * sign;
        res.div_exact(&den)
    }

    /// Univariate view of `p` in variable `v`; `None` if other variables
    /// occur. Denominators are cleared.
    pub fn from_mpoly(p: &MPoly, v: usize) -> Option<UPoly> {
        let mut c: Vec<Rational> = vec![Rational::new(); p.degree_in(v) as usize + 1];
        for (m, a) in p.terms() {
            if m.support().any(|u| u != v) {
                return None;
            }
            c[m.exp(v) as usize] = a.clone();
        }
        let l = c.iter().fold(Integer::from(1), |acc, x| acc.lcm(x.denom()));
        Some(UPoly::new(c.into_iter().map(|x| (x * &l).into_numer_denom().0).collect()))
    }

    pub fn to_mpoly(&self, ring: &Arc<Ring>, v: usize) -> MPoly {
        MPoly::from_terms(
            ring,
            self.c.iter().enumerate().map(|(i, a)| {
                let mut m = Monomial::one(ring.nvars());
                m.set_exp(v, i as u16);
                (m, Rational::from(a))
            }),
        )
    }

    /// Render as `x^4+x^3-93x^2-57x+12`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if *a == 0 {
                continue;
            }
            let neg = *a < 0;
            if neg {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            let abs = Integer::from(a.abs_ref());
            if abs != 1 || i == 0 {
                s.push_str(&abs.to_string());
            }
            if i >= 1 {
                s.push_str(var);
            }
            if i >= 2 {
                s.push('^');
                s.push_str(&i.to_string());
            }
        }
        s
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Resultant as the determinant of the Sylvester matrix.
pub fn resultant(a: &UPoly, b: &UPoly) -> Integer {
    if a.is_zero() || b.is_zero() {
        return Integer::new();
    }
    // Determinant of the Sylvester matrix by Bareiss.
    let m = a.degree();
    let n = b.degree();
    let size = m + n;
    if size == 0 {
        return Integer::from(1);
    }
    let mut mat = vec![vec![Integer::new(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            mat[i][i + j] = a.c[m - j].clone();
        }
    }
    for i in 0..m {
        for j in 0..=n {
            mat[n + i][i + j] = b.c[n - j].clone();
        }
    }
    bareiss_det(mat)
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn bareiss_det(mut a: Vec<Vec<Integer>>) -> Integer {
    let n = a.len();
    let mut sign = 1;
    let mut prev = Integer::from(1);
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Integer::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = Integer::from(&a[k][k] * &a[i][j]) - Integer::from(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}

fn variations(seq: &[UPoly], x: &Rational) -> i64 {
    let mut last = 0;
    let mut v = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

fn isolate_rec(s: &UPoly, seq: &[UPoly], lo: Rational, vlo: i64, hi: Rational, vhi: i64, out: &mut Vec<(Rational, Rational)>) {
    let count = vlo - vhi;
    if count == 0 {
        return;
    }
    if s.sign_at(&hi) == 0 && count == 1 {
        out.push((hi.clone(), hi));
        return;
    }
    if count == 1 {
        out.push((lo, hi));
        return;
    }
    let mid = Rational::from(&lo + &hi) / 2u32;
    let vm = variations(seq, &mid);
    isolate_rec(s, seq, lo, vlo, mid.clone(), vm, out);
    isolate_rec(s, seq, mid, vm, hi, vhi, out);
}

fn int_rec(s: &UPoly, seq: &[UPoly], lo: Rational, vlo: i64, hi: Rational, vhi: i64, out: &mut Vec<Integer>) {
    let count = vlo - vhi;
    if count == 0 {
        return;
    }
    // integers k with lo < k <= hi
    let first = lo.clone().floor().into_numer_denom().0 + 1u32;
    let last = hi.clone().floor().into_numer_denom().0;
    if first > last {
        return;
    }
    if Integer::from(&last - &first) <= 16 {
        let mut k = first;
        while k <= last {
            if s.eval(&k) == 0 {
                out.push(k.clone());
            }
            k += 1;
        }
        return;
    }
    let mid = Rational::from(Integer::from(&first + &last) >> 1u32);
    let vm = variations(seq, &mid);
    int_rec(s, seq, lo, vlo, mid.clone(), vm, out);
    int_rec(s, seq, mid, vm, hi, vhi, out);
}

fn rational_root_in(p: &UPoly, lo: &Rational, hi: &Rational) -> Option<Rational> {
    // A rational root a/b has b | lc; refine until the interval holds at most
    // one candidate with each denominator.
    let s = p.squarefree_part();
    let lc = Integer::from(s.lc().abs_ref());
    let bits = 2 * lc.significant_bits() + 4;
    let (l, h) = s.refine(lo, hi, bits);
    if l == h {
        return Some(l);
    }
    let mut d = Integer::from(1);
    while d <= lc {
        if lc.is_divisible(&d) {
            let num = Rational::from(&h * &d).floor().into_numer_denom().0;
            let cand = Rational::from((num, d.clone()));
            if cand > l && cand <= h && s.sign_at(&cand) == 0 {
                return Some(cand);
            }
        }
        d += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_roots() {
        // (x-1)(x+2)(x-5)^2
        let p = UPoly::from_i64(&[-1, 1]).mul(&UPoly::from_i64(&[2, 1])).mul(&UPoly::from_i64(&[-5, 1]).pow(2));
        let r: Vec<i64> = p.integer_roots().iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(r, vec![-2, 1, 5]);
        assert_eq!(p.isolate_real_roots().len(), 3);
        assert_eq!(p.integer_roots_in(&Integer::from(0), &Integer::from(1000)).len(), 2);
        let q = UPoly::from_i64(&[-1, 2]).mul(&UPoly::from_i64(&[3, 0, 1]));
        assert_eq!(q.rational_roots(), vec![Rational::from((1, 2))]);
    }

    #[test]
    fn sturm_counts_irrational() {
        let p = UPoly::from_i64(&[2, -6, 0, 1]); // x^3-6x+2
        assert_eq!(p.isolate_real_roots().len(), 3);
        assert!(p.integer_roots().is_empty());
        assert_eq!(p.discriminant(), 756);
        assert_eq!(UPoly::from_i64(&[1, -3, 0, 1]).discriminant(), 81);
    }

    #[test]
    fn power_sums_match() {
        // roots 1, 2, 3
        let p = UPoly::from_i64(&[-6, 11, -6, 1]);
        let ps = p.power_sums(4);
        let expect = [3, 6, 14, 36, 98];
        for (a, b) in ps.iter().zip(expect) {
            assert_eq!(*a, b);
        }
    }

    #[test]
    fn large_range_integer_roots() {
        let p = UPoly::from_i64(&[-1000, 1]).mul(&UPoly::from_i64(&[7, 0, 1]));
        assert_eq!(p.integer_roots(), vec![Integer::from(1000)]);
    }

    #[test]
    fn display() {
        assert_eq!(UPoly::from_i64(&[12, -57, -93, 1, 1]).to_string(), "x^4+x^3-93x^2-57x+12");
        assert_eq!(UPoly::from_i64(&[-62, 1]).to_string(), "x-62");
        assert_eq!(UPoly::from_i64(&[0, 1]).to_string(), "x");
    }
}
