//! Necessary conditions for a table algebra to come from an association
//! scheme.

mod closed;
mod fusion;
mod gegenbauer;

pub use closed::{closed_subsets, ClosedSubset};
pub use fusion::{fusion_check, FusionIdentities, FusionReport};
pub use gegenbauer::{dual_rank2_closed, gegenbauer, zonal, GegenbauerResult};

use crate::spectra::{spectral_data, SpectraConfig, SpectraError, SpectralData};
use crate::structcheck::{mat_mul_big, Instance, StructError};
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FeasError {
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Struct(#[from] StructError),
    #[error("invalid partition: {0}")]
    Partition(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasConfig {
    /// Krein parameters below this magnitude count as zero.
    pub eps: f64,
    /// Values in `[eps, warn_factor * eps]` are reported as borderline.
    pub warn_factor: f64,
    /// Highest Gegenbauer degree; `None` uses `2 max m_i`.
    pub lmax: Option<usize>,
    pub subconstituent_shortcut: bool,
    pub spectra: SpectraConfig,
}

impl Default for FeasConfig {
    fn default() -> Self {
        FeasConfig { eps: 1e-20, warn_factor: 1e6, lmax: None, subconstituent_shortcut: true, spectra: SpectraConfig::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Handshake,
    TriangleCount,
    ClosedSubsets,
    AbsoluteBound,
    KreinNonneg,
    Gegenbauer,
}

impl Condition {
    pub const ALL: [Condition; 6] = [Condition::Handshake, Condition::TriangleCount, Condition::ClosedSubsets, Condition::AbsoluteBound, Condition::KreinNonneg, Condition::Gegenbauer];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Handshake => "handshake",
            Condition::TriangleCount => "triangle-count",
            Condition::ClosedSubsets => "closed-subsets",
            Condition::AbsoluteBound => "absolute-bound",
            Condition::KreinNonneg => "krein-nonneg",
            Condition::Gegenbauer => "gegenbauer",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Not evaluated, e.g. because the spectrum could not be computed.
    Skipped,
    /// The condition has nothing to check for this instance.
    Vacuous,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
            Verdict::Vacuous => "vacuous",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub condition: Condition,
    pub verdict: Verdict,
    pub witness: Option<String>,
    /// Set when some quantity fell in the borderline band.
    pub warning: Option<String>,
    pub detail: String,
}

impl ConditionResult {
    fn new(condition: Condition, verdict: Verdict, witness: Option<String>, detail: String) -> Self {
        ConditionResult { condition, verdict, witness, warning: None, detail }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub order: i64,
    pub degrees: Vec<i64>,
    pub results: Vec<ConditionResult>,
    pub config: FeasConfig,
}

impl FeasibilityReport {
    pub fn get(&self, c: Condition) -> Option<&ConditionResult> {
        self.results.iter().find(|r| r.condition == c)
    }

    pub fn feasible(&self) -> bool {
        self.results.iter().all(|r| r.verdict != Verdict::Fail)
    }

    pub fn first_failure(&self) -> Option<&ConditionResult> {
        self.results.iter().find(|r| r.verdict == Verdict::Fail)
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {} degrees {:?}", self.order, self.degrees)?;
        for r in &self.results {
            write!(f, "{:<15} {:<8} {}", r.condition.name(), r.verdict.to_string(), r.detail)?;
            if let Some(w) = &r.witness {
                write!(f, " witness {w}")?;
            }
            if let Some(w) = &r.warning {
                write!(f, " warning {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// For symmetric `b_i`, `b_j` (`i ≠ j`), the relation-`j` graph on the
/// `k_i` neighbours of a vertex is `λ_{iji}`-regular, so `k_i λ_{iji}` is even.
/// Returns the first violating `(i, j)`.
pub fn handshake(inst: &Instance) -> Option<(usize, usize)> {
    let r = inst.rank;
    for i in 1..r {
        for j in 1..r {
            if i == j || inst.star[i] != i || inst.star[j] != j {
                continue;
            }
            if (inst.degrees[i] * inst.lambda(i, j, i)) % 2 != 0 {
                return Some((i, j));
            }
        }
    }
    None
}

/// `t_j = n (b_j^3)_{0,0} / 6` for each `j`, exactly.
pub fn triangle_counts(inst: &Instance) -> Vec<Rational> {
    let n = Integer::from(inst.order);
    inst.matrices
        .iter()
        .map(|m| {
            let big: Vec<Vec<Integer>> = m.iter().map(|row| row.iter().map(|&v| Integer::from(v)).collect()).collect();
            let cube = mat_mul_big(&mat_mul_big(&big, &big), &big);
            Rational::from((Integer::from(&n * &cube[0][0]), 6))
        })
        .collect()
}

/// First `(i, j)` with `Σ_{k: κ_{ijk} ≠ 0} m_k` above `m_i m_j`
/// (`m_i(m_i+1)/2` when `i = j`), and the smallest nonzero `|κ|` seen.
pub fn absolute_bound(sd: &SpectralData, eps: f64) -> (Option<(usize, usize, f64, f64)>, f64) {
    let r = sd.rank();
    let m: Vec<f64> = sd.multiplicities.iter().map(|x| x.to_f64()).collect();
    let mut smallest = f64::INFINITY;
    for i in 0..r {
        for j in i..r {
            let mut s = 0.0;
            for k in 0..r {
                let a = sd.krein[i][j][k].real().to_f64().hypot(sd.krein[i][j][k].imag().to_f64());
                if a > eps {
                    s += m[k];
                    smallest = smallest.min(a);
                }
            }
            let bound = if i == j { m[i] * (m[i] + 1.0) / 2.0 } else { m[i] * m[j] };
            if s > bound + 1e-9 {
                return (Some((i, j, s, bound)), smallest);
            }
        }
    }
    (None, smallest)
}

/// First `(i, j, k)` with `Re κ_{ijk} < -eps`, with its value.
pub fn krein_nonneg(krein: &[Vec<Vec<rug::Complex>>], eps: f64) -> Option<(usize, usize, usize, f64)> {
    for (i, a) in krein.iter().enumerate() {
        for (j, b) in a.iter().enumerate() {
            for (k, z) in b.iter().enumerate() {
                let v = z.real().to_f64();
                if v < -eps {
                    return Some((i, j, k, v));
                }
            }
        }
    }
    None
}

fn spectral_checks(sd: &SpectralData, cfg: &FeasConfig, out: &mut Vec<ConditionResult>) {
    let (ab, smallest) = absolute_bound(sd, cfg.eps);
    let mut res = match ab {
        Some((i, j, s, b)) => ConditionResult::new(Condition::AbsoluteBound, Verdict::Fail, Some(format!("({i},{j})")), format!("sum {s} > bound {b}")),
        None => ConditionResult::new(Condition::AbsoluteBound, Verdict::Pass, None, "all pairs within bound".into()),
    };
    if smallest <= cfg.eps * cfg.warn_factor {
        res.warning = Some(format!("smallest nonzero Krein parameter {smallest:e}"));
    }
    out.push(res);

    out.push(match krein_nonneg(&sd.krein, cfg.eps) {
        Some((i, j, k, v)) => ConditionResult::new(Condition::KreinNonneg, Verdict::Fail, Some(format!("({i},{j},{k})")), format!("κ = {v:e}")),
        None => ConditionResult::new(Condition::KreinNonneg, Verdict::Pass, None, "all Krein parameters nonnegative".into()),
    });

    let r = sd.rank();
    if r < 2 {
        out.push(ConditionResult::new(Condition::Gegenbauer, Verdict::Vacuous, None, "rank 1".into()));
        return;
    }
    let mmax = sd.multiplicities.iter().map(|m| m.to_f64()).fold(0.0, f64::max) as usize;
    let lmax = cfg.lmax.unwrap_or(2 * mmax);
    let results: Vec<GegenbauerResult> = (1..r).map(|i| gegenbauer(sd, i, lmax, cfg.eps, cfg.subconstituent_shortcut)).collect();
    let short: Vec<usize> = results.iter().filter(|g| g.first_column_only).map(|g| g.index).collect();
    let detail = if short.is_empty() { format!("ℓ ≤ {lmax}") } else { format!("ℓ ≤ {lmax}, first column only for {short:?}") };
    out.push(match results.iter().find_map(|g| g.failure.map(|f| (g.index, f))) {
        Some((i, (l, p, q, v))) => ConditionResult::new(Condition::Gegenbauer, Verdict::Fail, Some(format!("i={i} ℓ={l} entry ({p},{q})")), format!("value {v:e}; {detail}")),
        None => ConditionResult::new(Condition::Gegenbauer, Verdict::Pass, None, detail),
    });
}

/// Run every condition. Spectral conditions are skipped when the
/// eigenstructure cannot be computed; with `precomputed` they reuse it.
pub fn feasibility(inst: &Instance, cfg: &FeasConfig, precomputed: Option<&SpectralData>) -> FeasibilityReport {
    let mut results = Vec::new();
    let symmetric = (1..inst.rank).filter(|&i| inst.star[i] == i).count();
    results.push(if symmetric < 2 {
        ConditionResult::new(Condition::Handshake, Verdict::Vacuous, None, "fewer than two symmetric relations".into())
    } else {
        match handshake(inst) {
            Some((i, j)) => ConditionResult::new(Condition::Handshake, Verdict::Fail, Some(format!("({i},{j})")), format!("k_{i}·λ = {} is odd", inst.degrees[i] * inst.lambda(i, j, i))),
            None => ConditionResult::new(Condition::Handshake, Verdict::Pass, None, "all products even".into()),
        }
    });

    let t = triangle_counts(inst);
    let bad = t.iter().enumerate().skip(1).find(|(_, x)| *x.denom() != 1 || **x < 0);
    let listing = t.iter().skip(1).map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    results.push(match bad {
        Some((j, x)) => ConditionResult::new(Condition::TriangleCount, Verdict::Fail, Some(format!("j={j}")), format!("t = {x}; counts [{listing}]")),
        None => ConditionResult::new(Condition::TriangleCount, Verdict::Pass, None, format!("counts [{listing}]")),
    });

    let cs = closed_subsets(inst);
    let nontrivial = cs.iter().filter(|c| !c.is_trivial(inst.rank)).count();
    results.push(match cs.iter().find(|c| !c.integral) {
        Some(c) => ConditionResult::new(
            Condition::ClosedSubsets,
            Verdict::Fail,
            Some(format!("{:?}", c.elements)),
            format!("quotient degrees [{}]", c.quotient_degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")),
        ),
        None if nontrivial == 0 => ConditionResult::new(Condition::ClosedSubsets, Verdict::Vacuous, None, "primitive".into()),
        None => ConditionResult::new(Condition::ClosedSubsets, Verdict::Pass, None, format!("{nontrivial} nontrivial closed subsets, all quotients integral")),
    });

    let owned;
    let sd = match precomputed {
        Some(sd) => Ok(sd),
        None => {
            owned = spectral_data(inst, &cfg.spectra);
            owned.as_ref().map_err(|e| e.to_string())
        }
    };
    match sd {
        Ok(sd) => spectral_checks(sd, cfg, &mut results),
        Err(e) => {
            for c in [Condition::AbsoluteBound, Condition::KreinNonneg, Condition::Gegenbauer] {
                results.push(ConditionResult::new(c, Verdict::Skipped, None, e.clone()));
            }
        }
    }
    FeasibilityReport { order: inst.order, degrees: inst.degrees.clone(), results, config: cfg.clone() }
}
