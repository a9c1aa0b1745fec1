use crate::spectra::SpectralData;
use rug::Float;
use serde::{Deserialize, Serialize};

/// Outcome of the spherical-design test for one dual basis element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GegenbauerResult {
    pub index: usize,
    pub m: f64,
    pub lmax: usize,
    /// Only the first column was required to be nonnegative.
    pub first_column_only: bool,
    /// `(ℓ, row, col, value)` of the first negative entry.
    pub failure: Option<(usize, usize, usize, f64)>,
}

impl GegenbauerResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

type FMat = Vec<Vec<Float>>;

fn mat_mul(a: &FMat, b: &FMat, prec: u32) -> FMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = Float::new(prec);
                    for k in 0..n {
                        s += Float::with_val(prec, &a[i][k] * &b[k][j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn identity(n: usize, prec: u32) -> FMat {
    (0..n).map(|i| (0..n).map(|j| Float::with_val(prec, (i == j) as u32)).collect()).collect()
}

/// Coefficients `(a, b)` with `Q_ℓ = a (x Q_{ℓ-1} - b Q_{ℓ-2})`.
fn step(m: &Float, l: usize, prec: u32) -> (Float, Float) {
    let lf = l as f64;
    let a = Float::with_val(prec, m + (2.0 * lf - 2.0)) / lf;
    // (m-2)/(m-2) at ℓ = 2, which stays 1 on the circle
    let b = if l == 2 { Float::with_val(prec, 1) } else { Float::with_val(prec, m + (lf - 4.0)) / Float::with_val(prec, m + (2.0 * lf - 6.0)) };
    (a, b)
}

/// Scalar `Q_ℓ(x)` for dimension `m`.
pub fn zonal(m: f64, l: usize, x: f64) -> f64 {
    let prec = 128;
    let mm = Float::with_val(prec, m);
    let (mut prev, mut cur) = (Float::with_val(prec, 1), Float::with_val(prec, m * x));
    if l == 0 {
        return 1.0;
    }
    for k in 2..=l {
        let (a, b) = step(&mm, k, prec);
        let next = Float::with_val(prec, Float::with_val(prec, &cur * x) - Float::with_val(prec, &b * &prev)) * a;
        prev = std::mem::replace(&mut cur, next);
    }
    cur.to_f64()
}

/// `κ_{iik}` vanishes outside `{0, i}`, so `{b*_0, b*_i}` is a closed
/// subset of the dual of order `m_i + 1`.
pub fn dual_rank2_closed(sd: &SpectralData, i: usize, eps: f64) -> bool {
    let r = sd.rank();
    (0..r).filter(|&k| k != 0 && k != i).all(|k| sd.krein[i][i][k].real().to_f64().abs() <= eps && sd.krein[i][i][k].imag().to_f64().abs() <= eps)
}

/// Evaluate the normalized zonal polynomials `Q_1..Q_lmax` of `S^{m-1}`
/// at `L*_i / m_i` and require nonnegative entries (relative to the
/// largest entry of each power).
///
/// `Q_0 = 1`, `Q_1 = m x`,
/// `ℓ/(m+2ℓ-2) Q_ℓ = x Q_{ℓ-1} - (ℓ+m-4)/(m+2ℓ-6) Q_{ℓ-2}`.
pub fn gegenbauer(sd: &SpectralData, i: usize, lmax: usize, eps: f64, shortcut: bool) -> GegenbauerResult {
    let prec = sd.precision;
    let r = sd.rank();
    let m = Float::with_val(prec, &sd.multiplicities[i]);
    let mf = m.to_f64();
    let first_column_only = shortcut && dual_rank2_closed(sd, i, eps);
    let x: FMat = sd.lstar(i).iter().map(|row| row.iter().map(|z| Float::with_val(prec, z.real() / &m)).collect()).collect();
    let mut prev = identity(r, prec);
    let mut cur: FMat = x.iter().map(|row| row.iter().map(|v| Float::with_val(prec, v * &m)).collect()).collect();
    let mut failure = None;
    for l in 1..=lmax {
        if l > 1 {
            let (a, b) = step(&m, l, prec);
            let xq = mat_mul(&x, &cur, prec);
            let next: FMat = (0..r)
                .map(|p| (0..r).map(|q| Float::with_val(prec, &xq[p][q] - Float::with_val(prec, &b * &prev[p][q])) * &a).collect())
                .collect();
            prev = std::mem::replace(&mut cur, next);
        }
        let scale = cur.iter().flatten().map(|v| v.to_f64().abs()).fold(1.0, f64::max);
        let cols = if first_column_only { 1 } else { r };
        let neg = (0..r).flat_map(|p| (0..cols).map(move |q| (p, q))).find(|&(p, q)| cur[p][q].to_f64() < -eps * scale);
        if let Some((p, q)) = neg {
            failure = Some((l, p, q, cur[p][q].to_f64()));
            break;
        }
    }
    GegenbauerResult { index: i, m: mf, lmax, first_column_only, failure }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{spectral_data, SpectraConfig};
    use crate::structcheck::Instance;
    use crate::workbench::fixtures::n35;

    fn legendre(l: usize, x: f64) -> f64 {
        let (mut p0, mut p1) = (1.0, x);
        if l == 0 {
            return 1.0;
        }
        for k in 1..l {
            let kf = k as f64;
            let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
            p0 = p1;
            p1 = p2;
        }
        p1
    }

    fn binom(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn three_dimensional_case_is_legendre() {
        for l in 0..9 {
            for &x in &[-0.7, -0.2, 0.3, 0.9] {
                let want = (2 * l + 1) as f64 * legendre(l, x);
                assert!((zonal(3.0, l, x) - want).abs() < 1e-9, "l={l} x={x}");
            }
        }
    }

    #[test]
    fn value_at_one_is_harmonic_dimension() {
        for m in [2u64, 4, 6, 10] {
            for l in 1..8u64 {
                let dim = binom(m + l - 1, l) - if l >= 2 { binom(m + l - 3, l - 2) } else { 0.0 };
                assert!((zonal(m as f64, l as usize, 1.0) - dim).abs() < 1e-6 * dim, "m={m} l={l}");
            }
        }
    }

    #[test]
    fn complete_graph_dual_is_nonnegative() {
        let k = Instance::new(vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 5], vec![1, 4]]]).unwrap();
        let sd = spectral_data(&k, &SpectraConfig::default()).unwrap();
        assert!(gegenbauer(&sd, 1, 10, 1e-20, false).passed());
    }

    #[test]
    fn n35_passes_to_seven() {
        let sd = spectral_data(&n35(), &SpectraConfig::default()).unwrap();
        for i in 1..5 {
            if sd.multiplicities[i] == 10 {
                let res = gegenbauer(&sd, i, 7, 1e-20, true);
                assert!(res.passed(), "{res:?}");
            }
        }
    }
}
