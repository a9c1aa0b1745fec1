use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::PolyError;
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Polynomial ring Q[v_0, ..., v_{n-1}] identified by its variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Ring> {
        Arc::new(Ring { names: names.into_iter().map(Into::into).collect() })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Ring with one more variable appended.
    pub fn extended(&self, name: &str) -> Arc<Ring> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        Arc::new(Ring { names })
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exact sparse multivariate polynomial over the rationals. No stored
/// coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: impl Into<Rational>) -> Self {
        let c: Rational = c.into();
        let mut p = Self::zero(ring);
        if c != 0 {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<Ring>, v: usize) -> Self {
        let mut p = Self::zero(ring);
        p.terms.insert(Monomial::var(ring.nvars(), v), Rational::from(1));
        p
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Rational> {
        self.terms.get(m)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Constant value, if the polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::new());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.ring.nvars())).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for v in m.support() {
                used[v] = true;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &MPoly) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_ring(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_ring(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), Rational::from(-c));
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_ring(other)?;
        let mut r = MPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), Rational::from(ca * cb));
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if *c == 0 {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), Rational::from(a * c))).collect(),
        }
    }

    pub fn mul_monomial(&self, t: &Monomial, c: &Rational) -> MPoly {
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(t), Rational::from(a * c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Terms sorted in descending order under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|t| t.0)
    }

    /// Lcm of denominators.
    pub fn denominator_lcm(&self) -> Integer {
        let mut l = Integer::from(1);
        for c in self.terms.values() {
            l.lcm_mut(c.denom());
        }
        l
    }

    /// Gcd of numerators (after clearing denominators).
    pub fn integer_content(&self) -> Integer {
        let mut g = Integer::new();
        for c in self.terms.values() {
            g.gcd_mut(c.numer());
        }
        g
    }

    /// Clear denominators, divide by the integer content and make the
    /// leading coefficient under `order` positive.
    pub fn normalized(&self, order: &MonomialOrder) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.denominator_lcm();
        let scaled = self.scale(&Rational::from(l));
        let g = scaled.integer_content();
        let mut factor = Rational::from((Integer::from(1), g));
        if scaled.leading_term(order).map(|t| *t.1 < 0).unwrap_or(false) {
            factor = -factor;
        }
        scaled.scale(&factor)
    }

    /// Integer coefficients, assuming the polynomial has no denominators.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| *c.denom() == 1)
    }

    /// Substitute variable `v` by polynomial `e` (same ring).
    pub fn substitute(&self, v: usize, e: &MPoly) -> MPoly {
        let maxd = self.degree_in(v);
        if maxd == 0 {
            return self.clone();
        }
        let mut powers = vec![MPoly::one(&self.ring)];
        for k in 1..=maxd as usize {
            let next = &powers[k - 1] * e;
            powers.push(next);
        }
        let mut r = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            if k == 0 {
                r.add_term(m.clone(), c.clone());
                continue;
            }
            let rest = m.without(v);
            for (pm, pc) in &powers[k].terms {
                r.add_term(rest.mul(pm), Rational::from(c * pc));
            }
        }
        r
    }

    pub fn substitute_value(&self, v: usize, value: &Rational) -> MPoly {
        let mut r = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let k = m.exp(v) as u32;
            if k == 0 {
                r.add_term(m.clone(), c.clone());
            } else {
                let mut val: Rational = value.clone().pow(k);
                val *= c;
                r.add_term(m.without(v), val);
            }
        }
        r
    }

    /// Substitute several variable values at once.
    pub fn substitute_values(&self, values: &[(usize, Rational)]) -> MPoly {
        let mut slot: Vec<Option<&Rational>> = vec![None; self.ring.nvars()];
        for (v, q) in values {
            slot[*v] = Some(q);
        }
        let mut r = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            let mut cc = c.clone();
            for (v, s) in slot.iter().enumerate() {
                if let Some(q) = s {
                    let k = m.exp(v) as u32;
                    if k > 0 {
                        cc *= Rational::from((*q).pow(k));
                        mm.set_exp(v, 0);
                    }
                }
            }
            r.add_term(mm, cc);
        }
        r
    }

    /// Full evaluation; `values[v]` for every variable in use.
    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::new();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in m.support() {
                t *= Rational::from((&values[v]).pow(m.exp(v) as u32));
            }
            acc += t;
        }
        acc
    }

    pub fn eval_int(&self, values: &[Integer]) -> Rational {
        let mut acc = Rational::new();
        for (m, c) in &self.terms {
            let mut t = Integer::from(1);
            for v in m.support() {
                t *= Integer::from((&values[v]).pow(m.exp(v) as u32));
            }
            acc += Rational::from(c * t);
        }
        acc
    }

    /// Coefficients of `self` viewed as a polynomial in `v`; index = power.
    pub fn coefficients_in(&self, v: usize) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![MPoly::zero(&self.ring); d + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    /// If `self = c*v + h` with rational constant `c != 0` and `h` free of
    /// `v`, return `c`.
    pub fn linear_constant_coefficient(&self, v: usize) -> Option<Rational> {
        let mut coeff = None;
        for (m, c) in &self.terms {
            match m.exp(v) {
                0 => {}
                1 if m.support_len() == 1 => coeff = Some(c.clone()),
                _ => return None,
            }
        }
        coeff
    }

    /// Largest power of `v` dividing every term.
    pub fn var_valuation(&self, v: usize) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    /// Divide by `v^k`; every term must be divisible.
    pub fn divide_by_var(&self, v: usize, k: u16) -> MPoly {
        let mut r = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            mm.set_exp(v, m.exp(v) - k);
            r.terms.insert(mm, c.clone());
        }
        r
    }

    /// Move into another ring through a variable map (old id -> new id).
    pub fn remap(&self, ring: &Arc<Ring>, map: &[Option<usize>]) -> MPoly {
        let mut r = MPoly::zero(ring);
        for (m, c) in &self.terms {
            r.add_term(m.remap(map, ring.nvars()), c.clone());
        }
        r
    }

    /// Rebuild in a ring whose variable list is a superset by name.
    pub fn embed(&self, ring: &Arc<Ring>) -> MPoly {
        let map: Vec<Option<usize>> = self.ring.names().iter().map(|n| ring.index_of(n)).collect();
        self.remap(ring, &map)
    }

    pub fn to_string_with(&self, order: &MonomialOrder) -> String {
        super::parse::format_poly(self, order)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = MonomialOrder::grevlex(self.ring.nvars());
        f.write_str(&super::parse::format_poly(self, &order))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<'a> $tr<&'a MPoly> for &'a MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &'a MPoly) -> MPoly {
                self.$imp(rhs).expect("polynomials from different rings")
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$imp(&rhs).expect("polynomials from different rings")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&Rational::from(-1))
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        (&self).neg()
    }
}
