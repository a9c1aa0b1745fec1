use super::Instance;

fn perms_fixing_zero(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k + 1 >= cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    if r <= 1 {
        return vec![cur];
    }
    rec(1, &mut cur, &mut out);
    out.sort();
    out
}

/// Relabelings `p` (new `b_a` = old `b_{p[a]}`) fixing `b_0` that carry the
/// star permutation `from` to `to`.
pub fn star_compatible_perms(from: &[usize], to: &[usize]) -> Vec<Vec<usize>> {
    if from.len() != to.len() {
        return Vec::new();
    }
    perms_fixing_zero(from.len()).into_iter().filter(|p| (0..p.len()).all(|a| from[p[a]] == p[to[a]])).collect()
}

fn key(inst: &Instance) -> (Vec<usize>, Vec<i64>) {
    (inst.star.clone(), inst.matrices.iter().flatten().flatten().copied().collect())
}

/// Lexicographically least relabeling: the star permutation is brought to
/// its least form, then the concatenated matrices are minimized over the
/// relabelings commuting with it.
pub fn canonical_form(inst: &Instance) -> Instance {
    let mut best: Option<((Vec<usize>, Vec<i64>), Instance)> = None;
    for p in perms_fixing_zero(inst.rank) {
        let cand = inst.permuted(&p);
        let k = key(&cand);
        if best.as_ref().map(|(bk, _)| k < *bk).unwrap_or(true) {
            best = Some((k, cand));
        }
    }
    let mut out = best.expect("at least the identity relabeling").1;
    // multiplicities are indexed by characters, so relabeling keeps them
    out.multiplicities = inst.multiplicities.clone();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::fixtures::{n249, n35};

    #[test]
    fn canonical_is_idempotent_and_invariant() {
        for inst in [n35(), n249()] {
            let c = canonical_form(&inst);
            assert_eq!(canonical_form(&c), c);
            for p in perms_fixing_zero(5) {
                assert_eq!(canonical_form(&inst.permuted(&p)), c);
            }
        }
    }

    #[test]
    fn star_compatibility() {
        let from = [0, 2, 1, 3];
        let to = [0, 1, 3, 2];
        let ps = star_compatible_perms(&from, &to);
        assert!(!ps.is_empty());
        for p in ps {
            assert_eq!(from[p[2]], p[3]);
        }
        assert_eq!(perms_fixing_zero(5).len(), 24);
        assert_eq!(perms_fixing_zero(1), vec![vec![0]]);
    }
}
