use super::FeasError;
use crate::spectra::{spectral_data, SpectraConfig, SpectralData};
use crate::structcheck::Instance;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

/// Result of fusing basis elements along a partition.
#[derive(Clone, Debug, PartialEq)]
pub struct FusionReport {
    pub blocks: Vec<Vec<usize>>,
    /// First `(a, b, c)` for which the block sums of `λ` are not constant on block `c`.
    pub obstruction: Option<(usize, usize, usize)>,
    pub fused: Option<Instance>,
    /// Characters of the original table grouped by fused character.
    pub character_blocks: Vec<Vec<usize>>,
    pub identities: Option<FusionIdentities>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionIdentities {
    /// `max |P̃_{α,a} - Σ_{j∈B_a} P_{l,j}|` over `l ∈ C_α`.
    pub row_sum_residual: f64,
    /// `max |Q̃_{a,α} - Σ_{l∈C_α} Q_{j,l}|` over `j ∈ B_a`.
    pub column_sum_residual: f64,
    /// `max |m̃_α - Σ_{l∈C_α} m_l|`.
    pub multiplicity_residual: f64,
}

impl FusionReport {
    pub fn fuses(&self) -> bool {
        self.obstruction.is_none() && self.fused.is_some()
    }

    pub fn identities_hold(&self, tol: f64) -> bool {
        self.identities.as_ref().is_some_and(|id| id.row_sum_residual < tol && id.column_sum_residual < tol && id.multiplicity_residual < tol)
    }
}

fn cabs(z: &Complex) -> f64 {
    Float::with_val(z.prec().0, z.abs_ref()).to_f64()
}

fn validate(inst: &Instance, blocks: &[Vec<usize>]) -> Result<(), FeasError> {
    let r = inst.rank;
    let mut seen = vec![false; r];
    for b in blocks {
        for &j in b {
            if j >= r || seen[j] {
                return Err(FeasError::Partition(format!("index {j} repeated or out of range")));
            }
            seen[j] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(FeasError::Partition("blocks do not cover the basis".into()));
    }
    if blocks.first().map(|b| b.as_slice()) != Some(&[0]) {
        return Err(FeasError::Partition("the first block must be {0}".into()));
    }
    Ok(())
}

/// Fuse along `blocks` (first block `{0}`), and when the fusion closes,
/// compare its eigenmatrices with partial sums of the original ones.
pub fn fusion_check(inst: &Instance, sd: &SpectralData, blocks: &[Vec<usize>], cfg: &SpectraConfig) -> Result<FusionReport, FeasError> {
    validate(inst, blocks)?;
    let r = inst.rank;
    let s = blocks.len();
    let block_of: Vec<usize> = (0..r).map(|j| blocks.iter().position(|b| b.contains(&j)).unwrap()).collect();
    let mut report = FusionReport { blocks: blocks.to_vec(), obstruction: None, fused: None, character_blocks: Vec::new(), identities: None };
    for b in blocks {
        let target = block_of[inst.star[b[0]]];
        if b.iter().any(|&j| block_of[inst.star[j]] != target) {
            report.obstruction = Some((block_of[b[0]], block_of[b[0]], target));
            return Ok(report);
        }
    }
    // fused[a][c][b]: coefficient of c̃_c in c̃_a c̃_b
    let mut fused = vec![vec![vec![0i64; s]; s]; s];
    for a in 0..s {
        for b in 0..s {
            for c in 0..s {
                let sums: Vec<i64> = blocks[c].iter().map(|&k| blocks[a].iter().flat_map(|&i| blocks[b].iter().map(move |&j| (i, j))).map(|(i, j)| inst.lambda(i, j, k)).sum()).collect();
                if sums.iter().any(|&v| v != sums[0]) {
                    report.obstruction = Some((a, b, c));
                    return Ok(report);
                }
                fused[a][c][b] = sums[0];
            }
        }
    }
    let finst = Instance::new(fused)?;
    let fsd = spectral_data(&finst, cfg)?;
    let prec = sd.precision;
    let partial = |l: usize, a: usize| -> Complex {
        let mut z = Complex::new(prec);
        for &j in &blocks[a] {
            z += &sd.p[l][j];
        }
        z
    };
    let mut char_blocks = vec![Vec::new(); s];
    let mut row_res: f64 = 0.0;
    for l in 0..r {
        let (alpha, res) = (0..s)
            .map(|alpha| (alpha, (0..s).map(|a| cabs(&Complex::with_val(prec, &fsd.p[alpha][a] - partial(l, a)))).fold(0.0, f64::max)))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        row_res = row_res.max(res);
        char_blocks[alpha].push(l);
    }
    let mut col_res: f64 = 0.0;
    let mut mult_res: f64 = 0.0;
    for (alpha, cb) in char_blocks.iter().enumerate() {
        let msum: f64 = cb.iter().map(|&l| sd.multiplicities[l].to_f64()).sum();
        mult_res = mult_res.max((fsd.multiplicities[alpha].to_f64() - msum).abs());
        for a in 0..s {
            for &j in &blocks[a] {
                let mut z = Complex::new(prec);
                for &l in cb {
                    z += &sd.q[j][l];
                }
                col_res = col_res.max(cabs(&Complex::with_val(prec, &fsd.q[a][alpha] - z)));
            }
        }
    }
    report.fused = Some(finst);
    report.character_blocks = char_blocks;
    report.identities = Some(FusionIdentities { row_sum_residual: row_res, column_sum_residual: col_res, multiplicity_residual: mult_res });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::fixtures::{n249, n35};

    #[test]
    fn n249_trivial_fusion() {
        let inst = n249();
        let cfg = SpectraConfig::default();
        let sd = spectral_data(&inst, &cfg).unwrap();
        let rep = fusion_check(&inst, &sd, &[vec![0], vec![1, 2, 3, 4]], &cfg).unwrap();
        assert!(rep.fuses());
        assert_eq!(rep.fused.as_ref().unwrap().degrees, vec![1, 248]);
        assert_eq!(rep.character_blocks, vec![vec![0], vec![1, 2, 3, 4]]);
        assert!(rep.identities_hold(1e-30));
        // Σ_{l≥1} m_l P_{l,j} = -k_j
        for j in 1..5 {
            let s: f64 = (1..5).map(|l| sd.multiplicities[l].to_f64() * sd.p[l][j].real().to_f64()).sum();
            assert!((s + inst.degrees[j] as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn n35_subset_fusion() {
        let inst = n35();
        let cfg = SpectraConfig::default();
        let sd = spectral_data(&inst, &cfg).unwrap();
        // b_1, b_3, b_4 lie outside the closed subset {0, 2}
        let rep = fusion_check(&inst, &sd, &[vec![0], vec![2], vec![1, 3, 4]], &cfg).unwrap();
        assert!(rep.fuses());
        assert!(rep.identities_hold(1e-30));
        let bad = fusion_check(&inst, &sd, &[vec![0], vec![1, 2], vec![3, 4]], &cfg).unwrap();
        assert!(!bad.fuses());
        assert!(bad.obstruction.is_some());
    }

    #[test]
    fn rejects_bad_partition() {
        let inst = n35();
        let cfg = SpectraConfig::default();
        let sd = spectral_data(&inst, &cfg).unwrap();
        assert!(fusion_check(&inst, &sd, &[vec![0, 1], vec![2, 3, 4]], &cfg).is_err());
        assert!(fusion_check(&inst, &sd, &[vec![0], vec![1, 2]], &cfg).is_err());
    }
}
