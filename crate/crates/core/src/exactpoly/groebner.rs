use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::poly::{same_ring, MPoly, Ring};
use super::polyset::PolySet;
use super::PolyError;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::sync::Arc;

/// Resource caps for Buchberger's algorithm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbConfig {
    pub max_degree: u32,
    pub max_terms: usize,
    /// Optional cap on processed S-pairs.
    pub max_pairs: Option<usize>,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { max_degree: 60, max_terms: 1_000_000, max_pairs: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbStats {
    pub pairs_processed: usize,
    pub zero_reductions: usize,
    pub pairs_skipped: usize,
    pub max_sugar: u32,
}

type Exps = SmallVec<[u16; 16]>;

/// Monomial in internal variable numbering (priority order = id order).
#[derive(Clone, PartialEq, Eq, Debug)]
struct Mon {
    e: Exps,
    deg: u32,
    w: u32,
    mask: u64,
}

type Term = (Mon, Integer);

#[derive(Clone, Debug)]
struct GPoly {
    t: Vec<Term>,
    sugar: u32,
}

#[derive(Clone, Debug)]
enum Kind {
    Lex,
    GrevLex,
    Weighted(Vec<u32>),
}

/// Order-specific internal encoding shared by the reduction routines.
#[derive(Clone, Debug)]
struct Ctx {
    n: usize,
    kind: Kind,
    ext_to_int: Vec<usize>,
    int_to_ext: Vec<usize>,
}

impl Ctx {
    fn new(order: &MonomialOrder, n: usize) -> Ctx {
        let prio = order.priority().to_vec();
        assert_eq!(prio.len(), n, "order does not match ring size");
        let mut ext_to_int = vec![0; n];
        for (i, &v) in prio.iter().enumerate() {
            ext_to_int[v] = i;
        }
        let kind = match order {
            MonomialOrder::Lex { .. } => Kind::Lex,
            MonomialOrder::GrevLex { .. } => Kind::GrevLex,
            MonomialOrder::Weighted { weights, .. } => Kind::Weighted(prio.iter().map(|&v| weights[v]).collect()),
        };
        Ctx { n, kind, ext_to_int, int_to_ext: prio }
    }

    fn make(&self, e: Exps) -> Mon {
        let deg = e.iter().map(|&x| x as u32).sum();
        let w = match &self.kind {
            Kind::Weighted(ws) => ws.iter().zip(&e).map(|(w, x)| w * *x as u32).sum(),
            _ => 0,
        };
        let mut mask = 0u64;
        for (i, &x) in e.iter().enumerate() {
            if x > 0 {
                mask |= 1u64 << i.min(63);
            }
        }
        Mon { e, deg, w, mask }
    }

    fn mon(&self, m: &Monomial) -> Mon {
        let mut e: Exps = SmallVec::from_elem(0, self.n);
        for (v, &x) in m.exponents().iter().enumerate() {
            e[self.ext_to_int[v]] = x;
        }
        self.make(e)
    }

    fn ext(&self, m: &Mon) -> Monomial {
        let mut e = vec![0u16; self.n];
        for (i, &x) in m.e.iter().enumerate() {
            e[self.int_to_ext[i]] = x;
        }
        Monomial::from_exponents(&e)
    }

    #[inline]
    fn cmp(&self, a: &Mon, b: &Mon) -> Ordering {
        match &self.kind {
            Kind::Lex => a.e.cmp(&b.e),
            Kind::GrevLex => a.deg.cmp(&b.deg).then_with(|| revtie(&a.e, &b.e)),
            Kind::Weighted(_) => a.w.cmp(&b.w).then_with(|| a.deg.cmp(&b.deg)).then_with(|| revtie(&a.e, &b.e)),
        }
    }

    #[inline]
    fn mul(&self, a: &Mon, b: &Mon) -> Mon {
        Mon {
            e: a.e.iter().zip(&b.e).map(|(x, y)| x + y).collect(),
            deg: a.deg + b.deg,
            w: a.w + b.w,
            mask: a.mask | b.mask,
        }
    }

    fn lcm(&self, a: &Mon, b: &Mon) -> Mon {
        self.make(a.e.iter().zip(&b.e).map(|(x, y)| *x.max(y)).collect())
    }

    /// `b / a`, assuming `a | b`.
    fn quo(&self, b: &Mon, a: &Mon) -> Mon {
        self.make(b.e.iter().zip(&a.e).map(|(x, y)| x - y).collect())
    }

    fn from_mpoly(&self, p: &MPoly) -> GPoly {
        let l = p.denominator_lcm();
        let mut t: Vec<Term> = p
            .terms()
            .map(|(m, c)| {
                let v = Rational::from(c * &l);
                (self.mon(m), v.into_numer_denom().0)
            })
            .collect();
        t.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut g = GPoly { sugar: p.total_degree(), t };
        make_primitive(&mut g.t);
        g
    }

    fn to_mpoly(&self, ring: &Arc<Ring>, t: &[Term], scale: &Rational) -> MPoly {
        MPoly::from_terms(ring, t.iter().map(|(m, c)| (self.ext(m), Rational::from(c) / scale.clone())))
    }

    /// a*f - b*t*g over descending term lists.
    fn sub_mul(&self, f: &[Term], a: &Integer, b: &Integer, t: &Mon, g: &[Term]) -> Vec<Term> {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let one = *a == 1;
        let mut i = 0;
        let mut j = 0;
        let mut gm: Option<Mon> = g.first().map(|x| self.mul(t, &x.0));
        while i < f.len() || j < g.len() {
            let ord = match (i < f.len(), &gm) {
                (true, Some(m)) => self.cmp(&f[i].0, m),
                (true, None) => Ordering::Greater,
                (false, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    let c = if one { f[i].1.clone() } else { Integer::from(&f[i].1 * a) };
                    out.push((f[i].0.clone(), c));
                    i += 1;
                }
                Ordering::Less => {
                    let c = Integer::from(&g[j].1 * b);
                    out.push((gm.take().unwrap(), -c));
                    j += 1;
                    gm = g.get(j).map(|x| self.mul(t, &x.0));
                }
                Ordering::Equal => {
                    let mut c = if one { f[i].1.clone() } else { Integer::from(&f[i].1 * a) };
                    c -= Integer::from(&g[j].1 * b);
                    let m = gm.take().unwrap();
                    if c != 0 {
                        out.push((m, c));
                    }
                    i += 1;
                    j += 1;
                    gm = g.get(j).map(|x| self.mul(t, &x.0));
                }
            }
        }
        out
    }

    /// Reduce `f` by `basis`. Returns the remainder `r` and `scale` with
    /// `scale*f - r` in the ideal. Tail terms are reduced when `tail`.
    fn reduce(&self, f: Vec<Term>, basis: &[&GPoly], tail: bool) -> (Vec<Term>, Rational) {
        let mut rest = f;
        let mut pos = 0usize;
        let mut done: Vec<Term> = Vec::new();
        let mut scale = Rational::from(1);
        let masks: Vec<u64> = basis.iter().map(|g| g.t[0].0.mask).collect();
        let mut steps = 0usize;
        while pos < rest.len() {
            let (m, c) = (&rest[pos].0, &rest[pos].1);
            let mut hit = None;
            for (k, g) in basis.iter().enumerate() {
                if masks[k] & !m.mask == 0 && divides(&g.t[0].0, m) {
                    hit = Some(k);
                    break;
                }
            }
            match hit {
                Some(k) => {
                    let g = basis[k];
                    let (lm, lc) = (&g.t[0].0, &g.t[0].1);
                    let q = self.quo(m, lm);
                    let gcd = Integer::from(c.gcd_ref(lc));
                    let mut a = Integer::from(lc / &gcd);
                    let mut b = Integer::from(c / &gcd);
                    if a < 0 {
                        a = -a;
                        b = -b;
                    }
                    rest = self.sub_mul(&rest[pos + 1..], &a, &b, &q, &g.t[1..]);
                    pos = 0;
                    if a != 1 {
                        for d in done.iter_mut() {
                            d.1 *= &a;
                        }
                        scale *= Rational::from(a);
                    }
                    steps += 1;
                    if steps % 8 == 0 {
                        let big = rest.first().map(|x| x.1.significant_bits() > 256).unwrap_or(false)
                            || done.first().map(|x| x.1.significant_bits() > 256).unwrap_or(false);
                        if big {
                            let mut g = Integer::new();
                            for x in done.iter().chain(rest.iter()) {
                                g.gcd_mut(&x.1);
                                if g == 1 {
                                    break;
                                }
                            }
                            if g > 1 {
                                for x in done.iter_mut().chain(rest.iter_mut()) {
                                    x.1.div_exact_mut(&g);
                                }
                                scale /= Rational::from(g);
                            }
                        }
                    }
                }
                None => {
                    if !tail {
                        done.extend(rest.drain(pos..));
                        break;
                    }
                    done.push(rest[pos].clone());
                    pos += 1;
                }
            }
        }
        (done, scale)
    }

    fn spoly(&self, f: &GPoly, g: &GPoly) -> GPoly {
        let l = self.lcm(&f.t[0].0, &g.t[0].0);
        let tf = self.quo(&l, &f.t[0].0);
        let tg = self.quo(&l, &g.t[0].0);
        let gcd = Integer::from(f.t[0].1.gcd_ref(&g.t[0].1));
        let a = Integer::from(&g.t[0].1 / &gcd);
        let b = Integer::from(&f.t[0].1 / &gcd);
        let ft: Vec<Term> = f.t[1..].iter().map(|(m, c)| (self.mul(m, &tf), c.clone())).collect();
        let t = self.sub_mul(&ft, &a, &b, &tg, &g.t[1..]);
        let sugar = (f.sugar + tf.deg).max(g.sugar + tg.deg);
        GPoly { t, sugar }
    }
}

#[inline]
fn revtie(a: &[u16], b: &[u16]) -> Ordering {
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[inline]
fn divides(a: &Mon, b: &Mon) -> bool {
    a.e.iter().zip(&b.e).all(|(x, y)| x <= y)
}

fn coprime(a: &Mon, b: &Mon) -> bool {
    a.mask & b.mask == 0 && a.e.iter().zip(&b.e).all(|(x, y)| *x == 0 || *y == 0)
}

fn make_primitive(t: &mut [Term]) {
    if t.is_empty() {
        return;
    }
    let mut g = Integer::new();
    for x in t.iter() {
        g.gcd_mut(&x.1);
        if g == 1 {
            break;
        }
    }
    if t[0].1 < 0 {
        g = -g;
    }
    if g != 1 {
        for x in t.iter_mut() {
            x.1.div_exact_mut(&g);
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mon,
    sugar: u32,
}

/// Reduced Gröbner basis together with the data needed for fast normal
/// forms against it.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    ctx: Ctx,
    g: Vec<GPoly>,
    polys: Vec<MPoly>,
    pub stats: GbStats,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Basis elements, normalized, sorted by ascending leading monomial.
    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.g.len() == 1 && self.g[0].t.len() == 1 && self.g[0].t[0].0.deg == 0
    }

    pub fn to_polyset(&self) -> PolySet {
        let mut s = PolySet::with_order(&self.ring, self.order.clone());
        for p in &self.polys {
            s.insert(p.clone(), "gb");
        }
        s
    }

    pub fn contains(&self, p: &MPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Exact remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &MPoly) -> MPoly {
        if f.is_zero() {
            return f.clone();
        }
        let gp = self.ctx.from_mpoly(f);
        let basis: Vec<&GPoly> = self.g.iter().collect();
        // from_mpoly scaled f by some rational; recover it from a leading coefficient.
        let (lm, lc) = f.leading_term(&self.order).unwrap();
        let fscale = Rational::from(&gp.t[0].1) / lc.clone();
        debug_assert_eq!(self.ctx.ext(&gp.t[0].0), *lm);
        let (r, s) = self.ctx.reduce(gp.t, &basis, true);
        self.ctx.to_mpoly(&self.ring, &r, &(s * fscale))
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        (0..self.ctx.n).all(|v| {
            self.g.iter().any(|g| {
                let m = &g.t[0].0;
                m.e[v] > 0 && m.deg == m.e[v] as u32
            })
        })
    }

    /// Leading monomials in the external numbering.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.g.iter().map(|g| self.ctx.ext(&g.t[0].0)).collect()
    }
}

/// Reduced Gröbner basis with default caps.
pub fn buchberger(f: &PolySet, order: &MonomialOrder) -> Result<PolySet, PolyError> {
    Ok(buchberger_with(f, order, &GbConfig::default())?.to_polyset())
}

/// Reduced Gröbner basis (normal selection strategy, sugar degree,
/// Gebauer–Möller pair criteria).
pub fn buchberger_with(f: &PolySet, order: &MonomialOrder, cfg: &GbConfig) -> Result<GroebnerBasis, PolyError> {
    let ring = f.ring().clone();
    let ctx = Ctx::new(order, ring.nvars());
    let mut inputs: Vec<GPoly> = f.polys().iter().filter(|p| !p.is_zero()).map(|p| ctx.from_mpoly(p)).collect();
    if inputs.is_empty() {
        return Err(PolyError::Empty);
    }
    inputs.sort_by(|a, b| ctx.cmp(&a.t[0].0, &b.t[0].0));

    let mut st = State { ctx: &ctx, polys: Vec::new(), active: Vec::new(), pairs: Vec::new(), stats: GbStats::default() };
    for p in inputs {
        let h = {
            let basis: Vec<&GPoly> = st.active.iter().map(|&k| &st.polys[k]).collect();
            let (r, _) = ctx.reduce(p.t, &basis, true);
            r
        };
        if h.is_empty() {
            continue;
        }
        let mut t = h;
        make_primitive(&mut t);
        if t[0].0.deg == 0 {
            return Ok(unit_basis(&ring, order, ctx));
        }
        st.add(GPoly { t, sugar: p.sugar });
    }

    while let Some(k) = st.select() {
        let pair = st.pairs.swap_remove(k);
        if let Some(cap) = cfg.max_pairs {
            if st.stats.pairs_processed >= cap {
                return Err(PolyError::ResourceLimit(format!("more than {} S-pairs", cap)));
            }
        }
        if pair.lcm.deg > cfg.max_degree {
            return Err(PolyError::ResourceLimit(format!("S-pair degree {} exceeds cap {}", pair.lcm.deg, cfg.max_degree)));
        }
        st.stats.pairs_processed += 1;
        st.stats.max_sugar = st.stats.max_sugar.max(pair.sugar);
        let s = ctx.spoly(&st.polys[pair.i], &st.polys[pair.j]);
        if s.t.len() > cfg.max_terms {
            return Err(PolyError::ResourceLimit(format!("{} terms exceeds cap {}", s.t.len(), cfg.max_terms)));
        }
        let (mut r, _) = {
            let basis: Vec<&GPoly> = st.active.iter().map(|&k| &st.polys[k]).collect();
            ctx.reduce(s.t, &basis, true)
        };
        if r.is_empty() {
            st.stats.zero_reductions += 1;
            continue;
        }
        if r.len() > cfg.max_terms {
            return Err(PolyError::ResourceLimit(format!("{} terms exceeds cap {}", r.len(), cfg.max_terms)));
        }
        let deg = r.iter().map(|x| x.0.deg).max().unwrap();
        if deg > cfg.max_degree {
            return Err(PolyError::ResourceLimit(format!("degree {} exceeds cap {}", deg, cfg.max_degree)));
        }
        make_primitive(&mut r);
        if r[0].0.deg == 0 {
            let stats = st.stats.clone();
            let mut gb = unit_basis(&ring, order, ctx.clone());
            gb.stats = stats;
            return Ok(gb);
        }
        st.add(GPoly { t: r, sugar: pair.sugar });
        log::trace!("gb: basis {} pairs {}", st.active.len(), st.pairs.len());
    }

    // Interreduce the minimal basis.
    let State { polys: all, active, stats, .. } = st;
    let mut active = active;
    active.sort_by(|&a, &b| ctx.cmp(&all[a].t[0].0, &all[b].t[0].0));
    let mut reduced: Vec<GPoly> = Vec::with_capacity(active.len());
    for (idx, &k) in active.iter().enumerate() {
        let others: Vec<&GPoly> = active.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, &k2)| &all[k2]).collect();
        let p = &all[k];
        let (mut full, _) = ctx.reduce(p.t.clone(), &others, true);
        make_primitive(&mut full);
        reduced.push(GPoly { t: full, sugar: p.sugar });
    }
    let polys: Vec<MPoly> = reduced.iter().map(|g| ctx.to_mpoly(&ring, &g.t, &Rational::from(1))).collect();
    Ok(GroebnerBasis { ring, order: order.clone(), ctx, g: reduced, polys, stats })
}

fn unit_basis(ring: &Arc<Ring>, order: &MonomialOrder, ctx: Ctx) -> GroebnerBasis {
    let one = ctx.make(SmallVec::from_elem(0, ring.nvars()));
    GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        ctx,
        g: vec![GPoly { t: vec![(one, Integer::from(1))], sugar: 0 }],
        polys: vec![MPoly::one(ring)],
        stats: GbStats::default(),
    }
}

struct State<'a> {
    ctx: &'a Ctx,
    polys: Vec<GPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    stats: GbStats,
}

impl<'a> State<'a> {
    fn select(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, p) in self.pairs.iter().enumerate() {
            best = match best {
                None => Some(k),
                Some(b) => {
                    let q = &self.pairs[b];
                    let o = p
                        .sugar
                        .cmp(&q.sugar)
                        .then_with(|| self.ctx.cmp(&p.lcm, &q.lcm))
                        .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)));
                    if o == Ordering::Less {
                        Some(k)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    }

    /// Gebauer–Möller update with the new element `h`.
    fn add(&mut self, h: GPoly) {
        let ctx = self.ctx;
        let hid = self.polys.len();
        self.polys.push(h);
        let lh = self.polys[hid].t[0].0.clone();
        let sh = self.polys[hid].sugar;

        let cands: Vec<(usize, Mon, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let lg = &self.polys[g].t[0].0;
                (g, ctx.lcm(lg, &lh), coprime(lg, &lh))
            })
            .collect();
        let mut keep = vec![false; cands.len()];
        // Criterion M/F: drop a pair whose lcm is divisible by another candidate's lcm.
        for a in 0..cands.len() {
            if cands[a].2 {
                keep[a] = true;
                continue;
            }
            let mut dominated = false;
            for b in 0..cands.len() {
                if a == b {
                    continue;
                }
                // remaining in C (index > a, not yet processed) or already kept in D
                if b > a || keep[b] {
                    if divides(&cands[b].1, &cands[a].1) {
                        dominated = true;
                        break;
                    }
                }
            }
            if !dominated {
                keep[a] = true;
            }
        }
        let before = self.pairs.len();
        // Criterion B on old pairs.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !divides(&lh, &p.lcm) {
                return true;
            }
            let li = ctx.lcm(&polys[p.i].t[0].0, &lh);
            let lj = ctx.lcm(&polys[p.j].t[0].0, &lh);
            li == p.lcm || lj == p.lcm
        });
        self.stats.pairs_skipped += before - self.pairs.len();
        for (a, (g, l, cp)) in cands.into_iter().enumerate() {
            if !keep[a] {
                self.stats.pairs_skipped += 1;
                continue;
            }
            if cp {
                self.stats.pairs_skipped += 1;
                continue;
            }
            let lg = &self.polys[g].t[0].0;
            let sugar = (self.polys[g].sugar + l.deg - lg.deg).max(sh + l.deg - lh.deg);
            self.pairs.push(Pair { i: g, j: hid, lcm: l, sugar });
        }
        let polys = &self.polys;
        self.active.retain(|&g| !divides(&lh, &polys[g].t[0].0));
        self.active.push(hid);
    }
}

/// Remainder of `f` on division by `g` (generators used in list order).
pub fn normal_form(f: &MPoly, g: &PolySet, order: &MonomialOrder) -> Result<MPoly, PolyError> {
    if !same_ring(f.ring(), g.ring()) {
        return Err(PolyError::RingMismatch);
    }
    if f.is_zero() {
        return Ok(f.clone());
    }
    let ctx = Ctx::new(order, f.ring().nvars());
    let gs: Vec<GPoly> = g.polys().iter().filter(|p| !p.is_zero()).map(|p| ctx.from_mpoly(p)).collect();
    let basis: Vec<&GPoly> = gs.iter().collect();
    let gp = ctx.from_mpoly(f);
    let (_, lc) = f.leading_term(order).unwrap();
    let fscale = Rational::from(&gp.t[0].1) / lc.clone();
    let (r, s) = ctx.reduce(gp.t, &basis, true);
    Ok(ctx.to_mpoly(f.ring(), &r, &(s * fscale)))
}

/// S-polynomial of `f` and `g` with rational leading coefficients cancelled.
pub fn s_polynomial(f: &MPoly, g: &MPoly, order: &MonomialOrder) -> MPoly {
    let (mf, cf) = f.leading_term(order).expect("zero polynomial");
    let (mg, cg) = g.leading_term(order).expect("zero polynomial");
    let l = mf.lcm(mg);
    let tf = mf.quotient_of(&l);
    let tg = mg.quotient_of(&l);
    let a = Rational::from(1) / cf.clone();
    let b = Rational::from(1) / cg.clone();
    &f.mul_monomial(&tf, &a) - &g.mul_monomial(&tg, &b)
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(g: &PolySet, order: &MonomialOrder) -> bool {
    let ps = g.polys();
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let s = s_polynomial(&ps[i], &ps[j], order);
            match normal_form(&s, g, order) {
                Ok(r) if r.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn set(ring: &Arc<Ring>, ps: &[&str]) -> PolySet {
        PolySet::from_polys(ring, ps.iter().map(|s| parse_poly(ring, s).unwrap()))
    }

    #[test]
    fn normal_form_examples() {
        let r = Ring::new(["x", "y"]);
        let lex = MonomialOrder::lex(2);
        let x = parse_poly(&r, "x").unwrap();
        assert!(normal_form(&x, &set(&r, &["x"]), &lex).unwrap().is_zero());
        let one = MPoly::one(&r);
        assert_eq!(normal_form(&one, &PolySet::new(&r), &lex).unwrap(), one);
        let f = parse_poly(&r, "x^2+y").unwrap();
        let nf = normal_form(&f, &set(&r, &["x-y"]), &lex).unwrap();
        assert_eq!(nf, parse_poly(&r, "y^2+y").unwrap());
        // scaling of the divisor must not leak into the remainder
        let nf2 = normal_form(&f, &set(&r, &["3*x-3*y"]), &lex).unwrap();
        assert_eq!(nf2, parse_poly(&r, "y^2+y").unwrap());
        let f3 = parse_poly(&r, "1/2*x^2+7").unwrap();
        let nf3 = normal_form(&f3, &set(&r, &["2*x-3*y"]), &lex).unwrap();
        assert_eq!(nf3, parse_poly(&r, "9/8*y^2+7").unwrap());
    }

    #[test]
    fn buchberger_examples() {
        let r = Ring::new(["x", "y"]);
        let lex = MonomialOrder::lex(2);
        let g = buchberger(&set(&r, &["x"]), &lex).unwrap();
        assert!(g.same_elements(&set(&r, &["x"])));
        let g = buchberger(&set(&r, &["x-y^2", "x^2-y"]), &lex).unwrap();
        assert!(g.same_elements(&set(&r, &["x-y^2", "y^4-y"])), "{:?}", g.polys());
        assert!(is_groebner_basis(&g, &lex));
        let again = buchberger(&g, &lex).unwrap();
        assert!(again.same_elements(&g));
    }

    #[test]
    fn unit_ideal() {
        let r = Ring::new(["x", "y"]);
        let gb = buchberger_with(&set(&r, &["x*y-1", "x"]), &MonomialOrder::grevlex(2), &GbConfig::default()).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn cyclic3_grevlex() {
        let r = Ring::new(["a", "b", "c"]);
        let o = MonomialOrder::grevlex(3);
        let f = set(&r, &["a+b+c", "a*b+b*c+c*a", "a*b*c-1"]);
        let gb = buchberger(&f, &o).unwrap();
        assert!(is_groebner_basis(&gb, &o));
        for p in f.polys() {
            assert!(normal_form(p, &gb, &o).unwrap().is_zero());
        }
        let gbw = buchberger_with(&f, &o, &GbConfig::default()).unwrap();
        assert!(gbw.is_zero_dimensional());
    }

    #[test]
    fn caps_are_reported() {
        let r = Ring::new(["x", "y"]);
        let f = set(&r, &["x^3-y^2", "x^2*y-x"]);
        let cfg = GbConfig { max_degree: 2, ..Default::default() };
        let e = buchberger_with(&f, &MonomialOrder::lex(2), &cfg).unwrap_err();
        assert!(matches!(e, PolyError::ResourceLimit(_)));
    }
}
