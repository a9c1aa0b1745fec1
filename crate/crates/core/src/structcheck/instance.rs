use super::StructError;
use crate::varietygen::InvolutionType;
use rug::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Square integer matrix stored as rows.
pub type IntMatrix = Vec<Vec<i64>>;

/// A concrete table algebra given by its regular matrices.
///
/// `matrices[j][i][k]` is the coefficient of `b_i` in `b_j b_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instance {
    pub rank: usize,
    pub itype: Option<InvolutionType>,
    pub order: i64,
    pub degrees: Vec<i64>,
    pub star: Vec<usize>,
    pub matrices: Vec<IntMatrix>,
    #[serde(default, with = "rat_vec_opt", skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<Rational>>,
}

pub(crate) mod rat_vec_opt {
    use rug::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        let strs: Option<Vec<String>> = Option::deserialize(d)?;
        strs.map(|v| v.iter().map(|s| s.parse::<Rational>().map_err(serde::de::Error::custom)).collect()).transpose()
    }
}

impl Instance {
    /// Build from regular matrices; degrees and the star permutation are
    /// read off row 0.
    pub fn new(matrices: Vec<IntMatrix>) -> Result<Instance, StructError> {
        let r = matrices.len();
        if r == 0 {
            return Err(StructError::Shape("no matrices".into()));
        }
        for (j, m) in matrices.iter().enumerate() {
            if m.len() != r || m.iter().any(|row| row.len() != r) {
                return Err(StructError::Shape(format!("b{} is not {}x{}", j, r, r)));
            }
        }
        let mut degrees = Vec::with_capacity(r);
        let mut star = Vec::with_capacity(r);
        for (j, m) in matrices.iter().enumerate() {
            degrees.push(m[0].iter().sum());
            let nz: Vec<usize> = (0..r).filter(|&k| m[0][k] != 0).collect();
            star.push(if nz.len() == 1 { nz[0] } else { j });
        }
        let itype = if r >= 2 && (0..r).all(|j| star[star[j]] == j) { InvolutionType::from_star(&star) } else { None };
        let order = degrees.iter().sum();
        Ok(Instance { rank: r, itype, order, degrees, star, matrices, multiplicities: None })
    }

    /// Structure constant: coefficient of `b_k` in `b_i b_j`.
    pub fn lambda(&self, i: usize, j: usize, k: usize) -> i64 {
        self.matrices[i][k][j]
    }

    /// Relabel so that new `b_a` is old `b_{perm[a]}`.
    pub fn permuted(&self, perm: &[usize]) -> Instance {
        let r = self.rank;
        let mats: Vec<IntMatrix> = (0..r).map(|a| (0..r).map(|i| (0..r).map(|k| self.matrices[perm[a]][perm[i]][perm[k]]).collect()).collect()).collect();
        let mut out = Instance::new(mats).expect("permutation preserves shape");
        out.multiplicities = None;
        out
    }

    /// Same instance with its basis ordered so that the star permutation
    /// is the one of `itype`.
    pub fn with_itype(&self, itype: InvolutionType) -> Option<Instance> {
        let want = itype.star();
        if want.len() != self.rank {
            return None;
        }
        super::canonical::star_compatible_perms(&self.star, &want).into_iter().next().map(|p| self.permuted(&p))
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, m) in self.matrices.iter().enumerate() {
            let rows: Vec<String> = m.iter().map(|row| format!("[{}]", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
            writeln!(f, "b{} = [{}]", j, rows.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Identity,
    Nonnegative,
    RowZero,
    ColumnZero,
    RowSums,
    StarInvolution,
    StarTranspose,
    DegreeSymmetry,
    Commutative,
    Associative,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::Identity,
        Axiom::Nonnegative,
        Axiom::RowZero,
        Axiom::ColumnZero,
        Axiom::RowSums,
        Axiom::StarInvolution,
        Axiom::StarTranspose,
        Axiom::DegreeSymmetry,
        Axiom::Commutative,
        Axiom::Associative,
    ];
}

/// Outcome of one axiom. The witness is `(j, i, k)`: matrix `b_j`, row
/// `i`, column `k` for entry checks, or structure-constant indices for
/// triple checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<(usize, usize, usize)>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SitaReport {
    pub checks: Vec<AxiomCheck>,
}

impl SitaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, a: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == a).expect("every axiom is reported")
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn first_failure(r: usize, mut bad: impl FnMut(usize, usize, usize) -> Option<String>) -> Option<((usize, usize, usize), String)> {
    for j in 0..r {
        for i in 0..r {
            for k in 0..r {
                if let Some(msg) = bad(j, i, k) {
                    return Some(((j, i, k), msg));
                }
            }
        }
    }
    None
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Vec<Vec<i128>> {
    let r = a.len();
    (0..r).map(|i| (0..r).map(|k| (0..r).map(|l| a[i][l] as i128 * b[l][k] as i128).sum()).collect()).collect()
}

/// Check every table-algebra axiom on the regular matrices.
pub fn verify_sita(inst: &Instance) -> SitaReport {
    let r = inst.rank;
    let m = &inst.matrices;
    let d = &inst.degrees;
    let star = &inst.star;
    let mut checks = Vec::new();
    let mut push = |axiom: Axiom, res: Option<((usize, usize, usize), String)>| {
        checks.push(match res {
            None => AxiomCheck { axiom, passed: true, witness: None, detail: String::new() },
            Some((w, detail)) => AxiomCheck { axiom, passed: false, witness: Some(w), detail },
        });
    };

    push(Axiom::Identity, first_failure(r, |j, i, k| (j == 0 && m[0][i][k] != (i == k) as i64).then(|| format!("b0[{},{}] = {}", i, k, m[0][i][k]))));
    push(Axiom::Nonnegative, first_failure(r, |j, i, k| (m[j][i][k] < 0).then(|| format!("b{}[{},{}] = {}", j, i, k, m[j][i][k]))));
    push(
        Axiom::RowZero,
        first_failure(r, |j, _, k| {
            let want = if k == star[j] { d[j] } else { 0 };
            (m[j][0][k] != want || d[j] < 1).then(|| format!("b{}[0,{}] = {}, expected {}", j, k, m[j][0][k], want))
        }),
    );
    push(Axiom::ColumnZero, first_failure(r, |j, i, _| (m[j][i][0] != (i == j) as i64).then(|| format!("b{}[{},0] = {}", j, i, m[j][i][0]))));
    push(
        Axiom::RowSums,
        first_failure(r, |j, i, k| {
            let s: i64 = m[j][i].iter().sum();
            (k == 0 && s != d[j]).then(|| format!("row {} of b{} sums to {}, degree is {}", i, j, s, d[j]))
        }),
    );
    push(
        Axiom::StarInvolution,
        first_failure(r, |j, _, k| (k == 0 && (star[star[j]] != j || d[star[j]] != d[j])).then(|| format!("star({}) = {} is not an involution preserving degrees", j, star[j]))),
    );
    // δ_i (b_{j*})[i,k] = δ_k (b_j)[k,i]
    push(
        Axiom::StarTranspose,
        first_failure(r, |j, i, k| {
            let lhs = d[i] as i128 * m[star[j]][i][k] as i128;
            let rhs = d[k] as i128 * m[j][k][i] as i128;
            (lhs != rhs).then(|| format!("δ{}·b{}[{},{}] = {} but δ{}·b{}[{},{}] = {}", i, star[j], i, k, lhs, k, j, k, i, rhs))
        }),
    );
    // λ_{jki*} δ_i = λ_{kij*} δ_j = λ_{ijk*} δ_k
    push(
        Axiom::DegreeSymmetry,
        first_failure(r, |i, j, k| {
            let a = inst.lambda(j, k, star[i]) as i128 * d[i] as i128;
            let b = inst.lambda(k, i, star[j]) as i128 * d[j] as i128;
            let c = inst.lambda(i, j, star[k]) as i128 * d[k] as i128;
            (a != b || b != c).then(|| format!("weighted constants differ: {}, {}, {}", a, b, c))
        }),
    );
    let prods: Vec<Vec<Vec<Vec<i128>>>> = (0..r).map(|a| (0..r).map(|b| mat_mul(&m[a], &m[b])).collect()).collect();
    push(
        Axiom::Commutative,
        first_failure(r, |a, b, _| {
            (a < b && prods[a][b] != prods[b][a]).then(|| format!("b{} b{} != b{} b{}", a, b, b, a))
        }),
    );
    // b_a b_b = Σ_c λ_{abc} b_c in the regular representation
    push(
        Axiom::Associative,
        first_failure(r, |a, b, _| {
            let mut want = vec![vec![0i128; r]; r];
            for c in 0..r {
                let l = inst.lambda(a, b, c) as i128;
                if l != 0 {
                    for i in 0..r {
                        for k in 0..r {
                            want[i][k] += l * m[c][i][k] as i128;
                        }
                    }
                }
            }
            (prods[a][b] != want).then(|| format!("b{} b{} does not expand by its structure constants", a, b))
        }),
    );
    SitaReport { checks }
}

#[cfg(test)]
mod tests {
    use crate::workbench::fixtures::n35;
    use super::*;

    #[test]
    fn n35_passes_all_axioms() {
        let inst = n35();
        let rep = verify_sita(&inst);
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert_eq!(rep.checks.len(), Axiom::ALL.len());
        assert_eq!(inst.order, 35);
        assert_eq!(inst.degrees, vec![1, 4, 6, 12, 12]);
        assert_eq!(inst.itype, Some(InvolutionType::S5));
    }

    #[test]
    fn rank_one_passes() {
        let inst = Instance::new(vec![vec![vec![1]]]).unwrap();
        assert!(verify_sita(&inst).passed());
        assert_eq!(inst.order, 1);
    }

    #[test]
    fn corrupted_entry_fails_row_sum() {
        let mut mats = n35().matrices;
        mats[1][1][1] = 1;
        let inst = Instance::new(mats).unwrap();
        let rep = verify_sita(&inst);
        let rs = rep.get(Axiom::RowSums);
        assert!(!rs.passed);
        let (j, i, _) = rs.witness.unwrap();
        assert_eq!((j, i), (1, 1));
    }

    #[test]
    fn rejects_bad_shape() {
        assert!(Instance::new(vec![vec![vec![1, 0]]]).is_err());
        assert!(Instance::new(vec![]).is_err());
    }

    #[test]
    fn permutation_preserves_axioms() {
        let inst = n35();
        let p = inst.permuted(&[0, 1, 2, 4, 3]);
        assert!(verify_sita(&p).passed());
        assert_eq!(p.degrees, vec![1, 4, 6, 12, 12]);
        assert_eq!(p.permuted(&[0, 1, 2, 4, 3]), inst);
    }

    #[test]
    fn serde_round_trip() {
        let mut inst = n35();
        inst.multiplicities = Some(vec![Rational::from(1), Rational::from((5, 3))]);
        let s = serde_json::to_string(&inst).unwrap();
        let back: Instance = serde_json::from_str(&s).unwrap();
        assert_eq!(back, inst);
    }
}
