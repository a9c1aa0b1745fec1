use crate::structcheck::Instance;
use rug::Rational;
use serde::{Deserialize, Serialize};

/// A closed subset with its quotient by double cosets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedSubset {
    pub elements: Vec<usize>,
    pub order: i64,
    /// Double cosets `S b_j S`, each a sorted block of basis indices.
    pub quotient_blocks: Vec<Vec<usize>>,
    #[serde(with = "rat_strs")]
    pub quotient_degrees: Vec<Rational>,
    pub integral: bool,
}

mod rat_strs {
    use rug::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

impl ClosedSubset {
    pub fn is_trivial(&self, rank: usize) -> bool {
        self.elements.len() == 1 || self.elements.len() == rank
    }
}

fn support_of_product(inst: &Instance, a: &[usize], b: &[usize]) -> Vec<bool> {
    let r = inst.rank;
    let mut hit = vec![false; r];
    for &i in a {
        for &j in b {
            for (k, h) in hit.iter_mut().enumerate() {
                if inst.lambda(i, j, k) != 0 {
                    *h = true;
                }
            }
        }
    }
    hit
}

/// Every star-closed subset containing `b_0` closed under multiplication,
/// ordered by size then elements, with its quotient degrees.
pub fn closed_subsets(inst: &Instance) -> Vec<ClosedSubset> {
    let r = inst.rank;
    let mut out = Vec::new();
    for mask in 0u32..(1 << (r - 1)) {
        let elems: Vec<usize> = std::iter::once(0).chain((1..r).filter(|j| mask & (1 << (j - 1)) != 0)).collect();
        if elems.iter().any(|&j| !elems.contains(&inst.star[j])) {
            continue;
        }
        let sup = support_of_product(inst, &elems, &elems);
        if (0..r).any(|k| sup[k] && !elems.contains(&k)) {
            continue;
        }
        let order: i64 = elems.iter().map(|&j| inst.degrees[j]).sum();
        let mut assigned = vec![false; r];
        let mut blocks = Vec::new();
        for j in 0..r {
            if assigned[j] {
                continue;
            }
            let left = support_of_product(inst, &elems, &[j]);
            let left_set: Vec<usize> = (0..r).filter(|&k| left[k]).collect();
            let both = support_of_product(inst, &left_set, &elems);
            let block: Vec<usize> = (0..r).filter(|&k| both[k]).collect();
            for &k in &block {
                assigned[k] = true;
            }
            blocks.push(block);
        }
        let degrees: Vec<Rational> = blocks.iter().map(|b| Rational::from((b.iter().map(|&k| inst.degrees[k]).sum::<i64>(), order))).collect();
        let integral = inst.order % order == 0 && degrees.iter().all(|d| *d.denom() == 1);
        out.push(ClosedSubset { elements: elems, order, quotient_blocks: blocks, quotient_degrees: degrees, integral });
    }
    out.sort_by(|a, b| (a.elements.len(), &a.elements).cmp(&(b.elements.len(), &b.elements)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::fixtures::{n249, n35};

    #[test]
    fn n35_lattice() {
        let cs = closed_subsets(&n35());
        let nontrivial: Vec<_> = cs.iter().filter(|c| !c.is_trivial(5)).collect();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(nontrivial[0].elements, vec![0, 2]);
        assert_eq!(nontrivial[0].order, 7);
        assert_eq!(nontrivial[0].quotient_blocks.len(), 2);
        assert!(cs.iter().all(|c| c.integral));
    }

    #[test]
    fn n249_primitive() {
        let cs = closed_subsets(&n249());
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.is_trivial(5)));
    }

    #[test]
    fn lattice_closed_under_intersection() {
        for inst in [n35(), n249()] {
            let cs = closed_subsets(&inst);
            for a in &cs {
                for b in &cs {
                    let meet: Vec<usize> = a.elements.iter().copied().filter(|x| b.elements.contains(x)).collect();
                    assert!(cs.iter().any(|c| c.elements == meet));
                }
            }
        }
    }
}
