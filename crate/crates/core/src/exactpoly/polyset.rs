use super::order::MonomialOrder;
use super::poly::{same_ring, MPoly, Ring};
use super::PolyError;
use std::collections::HashSet;
use std::sync::Arc;

/// Ordered, deduplicated list of normalized generators with a provenance
/// tag per generator.
#[derive(Clone, Debug)]
pub struct PolySet {
    ring: Arc<Ring>,
    order: MonomialOrder,
    polys: Vec<MPoly>,
    tags: Vec<String>,
    seen: HashSet<MPoly>,
}

impl PolySet {
    /// Empty set normalizing under grevlex.
    pub fn new(ring: &Arc<Ring>) -> Self {
        Self::with_order(ring, MonomialOrder::grevlex(ring.nvars()))
    }

    pub fn with_order(ring: &Arc<Ring>, order: MonomialOrder) -> Self {
        PolySet { ring: ring.clone(), order, polys: Vec::new(), tags: Vec::new(), seen: HashSet::new() }
    }

    pub fn from_polys(ring: &Arc<Ring>, polys: impl IntoIterator<Item = MPoly>) -> Self {
        let mut s = Self::new(ring);
        for p in polys {
            s.insert(p, "");
        }
        s
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn tags(&self) -> &[String] {
        &self.tags
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MPoly, &str)> {
        self.polys.iter().zip(self.tags.iter().map(|s| s.as_str()))
    }

    /// Normalize and insert; zero and duplicates are dropped. Returns
    /// whether the set grew.
    pub fn insert(&mut self, p: MPoly, tag: impl Into<String>) -> bool {
        self.try_insert(p, tag).expect("polynomial from a different ring")
    }

    pub fn try_insert(&mut self, p: MPoly, tag: impl Into<String>) -> Result<bool, PolyError> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(PolyError::RingMismatch);
        }
        if p.is_zero() {
            return Ok(false);
        }
        let n = p.normalized(&self.order);
        if self.seen.contains(&n) {
            return Ok(false);
        }
        self.seen.insert(n.clone());
        self.polys.push(n);
        self.tags.push(tag.into());
        Ok(true)
    }

    pub fn contains(&self, p: &MPoly) -> bool {
        !p.is_zero() && self.seen.contains(&p.normalized(&self.order))
    }

    pub fn extend(&mut self, other: &PolySet) {
        for (p, t) in other.iter() {
            self.insert(p.clone(), t);
        }
    }

    /// Same generators as a set, ignoring order and tags.
    pub fn same_elements(&self, other: &PolySet) -> bool {
        self.len() == other.len() && other.polys.iter().all(|p| self.contains(p))
    }

    /// Apply `f` to every generator, re-normalizing and deduplicating.
    pub fn map(&self, mut f: impl FnMut(&MPoly) -> MPoly) -> PolySet {
        let mut out = PolySet::with_order(&self.ring, self.order.clone());
        for (p, t) in self.iter() {
            out.insert(f(p), t);
        }
        out
    }

    /// Move every generator into `ring` (superset of names).
    pub fn embed(&self, ring: &Arc<Ring>) -> PolySet {
        let map: Vec<Option<usize>> = self.ring.names().iter().map(|n| ring.index_of(n)).collect();
        let order = self.order.remap(&map, ring.nvars());
        let mut out = PolySet::with_order(ring, order);
        for (p, t) in self.iter() {
            out.insert(p.remap(ring, &map), t);
        }
        out
    }

    /// Renormalize under another order.
    pub fn reordered(&self, order: MonomialOrder) -> PolySet {
        let mut out = PolySet::with_order(&self.ring, order);
        for (p, t) in self.iter() {
            out.insert(p.clone(), t);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedupes_up_to_scalar() {
        let r = Ring::new(["x", "y"]);
        let x = MPoly::var(&r, 0);
        let y = MPoly::var(&r, 1);
        let mut s = PolySet::new(&r);
        assert!(s.insert(&x - &y, "a"));
        assert!(!s.insert((&y - &x).scale(&rug::Rational::from(3)), "b"));
        assert!(!s.insert(MPoly::zero(&r), "c"));
        assert_eq!(s.len(), 1);
        assert_eq!(s.polys()[0].to_string(), "x-y");
    }
}
