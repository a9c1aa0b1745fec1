//! High-precision eigenstructure: first and second eigenmatrices and
//! Krein parameters, with exact rational recognition.

mod rational;
mod roots;

pub use rational::{recognize_rational, render_value};
pub use roots::roots;

use crate::structcheck::{combined_matrix, multiplicities, Instance, Multiplicities, StructError};
use rug::ops::Pow;
use rug::{Complex, Float, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Struct(#[from] StructError),
    #[error("{what}: residual {value:e} exceeds tolerance {eps:e}")]
    Residual { what: String, value: f64, eps: f64 },
    #[error("degenerate eigenspace for character {0}")]
    Degenerate(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectraConfig {
    pub precision: u32,
    /// Zero tolerance before scaling by matrix norms.
    pub eps: f64,
    /// Largest denominator tried when recognizing rationals.
    pub max_den: u64,
}

impl Default for SpectraConfig {
    fn default() -> Self {
        SpectraConfig { precision: 256, eps: 2f64.powi(-100), max_den: 10_000 }
    }
}

/// `p[l][j]` is the value of character `l` at `b_j`; `q[j][l]` is the
/// dual; `krein[i][j][k]` is `κ_{ijk}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    pub precision: u32,
    pub eps: f64,
    pub order: i64,
    pub degrees: Vec<i64>,
    /// Exact multiplicity of each row's character.
    pub multiplicities: Vec<Rational>,
    /// Galois orbit index of each row; orbit 0 is the degree character.
    pub orbit_of_row: Vec<usize>,
    pub p: Vec<Vec<Complex>>,
    pub q: Vec<Vec<Complex>>,
    pub krein: Vec<Vec<Vec<Complex>>>,
}

fn cabs(z: &Complex) -> f64 {
    Float::with_val(z.prec().0, z.abs_ref()).to_f64()
}

fn cmat_mul_vec(m: &[Vec<i64>], v: &[Complex], prec: u32) -> Vec<Complex> {
    m.iter()
        .map(|row| {
            let mut s = Complex::new(prec);
            for (a, x) in row.iter().zip(v) {
                if *a != 0 {
                    s += Complex::with_val(prec, x * *a);
                }
            }
            s
        })
        .collect()
}

/// Kernel vector of a matrix with one-dimensional null space, scaled so
/// that its largest entry is 1.
fn kernel_vector(mut a: Vec<Vec<Complex>>, prec: u32) -> Option<Vec<Complex>> {
    let n = a.len();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    let scale = a.iter().flatten().map(cabs).fold(1.0, f64::max);
    let thresh = scale * 2f64.powi(-(prec as i32) / 2);
    for c in 0..n {
        if row == n {
            break;
        }
        let (best, val) = (row..n).map(|i| (i, cabs(&a[i][c]))).fold((row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= thresh {
            continue;
        }
        a.swap(row, best);
        for i in row + 1..n {
            let f = Complex::with_val(prec, &a[i][c] / &a[row][c]);
            for k in c..n {
                let t = Complex::with_val(prec, &f * &a[row][k]);
                a[i][k] -= t;
            }
        }
        pivot_cols.push(c);
        row += 1;
    }
    if pivot_cols.len() != n - 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivot_cols.contains(c))?;
    let mut v = vec![Complex::new(prec); n];
    v[free] = Complex::with_val(prec, (1, 0));
    for (r, &c) in pivot_cols.iter().enumerate().rev() {
        let mut s = Complex::new(prec);
        for k in c + 1..n {
            s += Complex::with_val(prec, &a[r][k] * &v[k]);
        }
        v[c] = Complex::with_val(prec, -s / &a[r][c]);
    }
    let (imax, _) = v.iter().enumerate().map(|(i, x)| (i, cabs(x))).fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    let m = v[imax].clone();
    for x in v.iter_mut() {
        *x = Complex::with_val(prec, &*x / &m);
    }
    Some(v)
}

fn sort_key(row: &[Complex]) -> Vec<f64> {
    row[1..].iter().flat_map(|z| [-z.real().to_f64(), -z.imag().to_f64()]).collect()
}

/// First eigenmatrix: diagonalize a separating integer combination of
/// the regular matrices and read every `b_j` off each eigenvector.
pub fn eigenmatrix_p(inst: &Instance, cfg: &SpectraConfig) -> Result<(Vec<Vec<Complex>>, Vec<usize>, Multiplicities), SpectraError> {
    let prec = cfg.precision;
    let r = inst.rank;
    let mult = multiplicities(inst)?;
    let g = combined_matrix(inst, &mult.combination);
    let gscale = g.iter().flatten().map(|x| x.to_f64().abs()).fold(1.0, f64::max);
    let mut rows: Vec<(usize, Vec<Complex>)> = Vec::with_capacity(r);
    for (oi, orbit) in mult.orbits.iter().enumerate() {
        for theta in roots(&orbit.factor, prec) {
            let a: Vec<Vec<Complex>> = (0..r)
                .map(|i| (0..r).map(|k| if i == k { Complex::with_val(prec, -&theta) + &g[i][k] } else { Complex::with_val(prec, (&g[i][k], 0)) }).collect())
                .collect();
            let v = kernel_vector(a, prec).ok_or(SpectraError::Degenerate(rows.len()))?;
            let vnorm = v.iter().map(cabs).fold(0.0, f64::max);
            let mut prow = Vec::with_capacity(r);
            for j in 0..r {
                let mv = cmat_mul_vec(&inst.matrices[j], &v, prec);
                // eigenvalue from the largest coordinate of v
                let (imax, _) = v.iter().enumerate().map(|(i, x)| (i, cabs(x))).fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
                let lam = Complex::with_val(prec, &mv[imax] / &v[imax]);
                let res = mv.iter().zip(&v).map(|(a, b)| cabs(&Complex::with_val(prec, a - Complex::with_val(prec, &lam * b)))).fold(0.0, f64::max) / vnorm;
                let tol = cfg.eps * gscale.max(inst.degrees[j] as f64);
                if res > tol {
                    return Err(SpectraError::Residual { what: format!("b{} on eigenvector {}", j, rows.len()), value: res, eps: tol });
                }
                prow.push(lam);
            }
            rows.push((oi, prow));
        }
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| sort_key(&a.1).partial_cmp(&sort_key(&b.1)).unwrap_or(std::cmp::Ordering::Equal)));
    let orbit_of_row = rows.iter().map(|x| x.0).collect();
    let p = rows.into_iter().map(|x| x.1).collect();
    Ok((p, orbit_of_row, mult))
}

/// `Q[j][i] = m_i conj(P[i][j]) / k_j`, checked against `PQ = nI`.
pub fn eigenmatrix_q(p: &[Vec<Complex>], mults: &[Rational], degrees: &[i64], order: i64, cfg: &SpectraConfig) -> Result<Vec<Vec<Complex>>, SpectraError> {
    let prec = cfg.precision;
    let r = p.len();
    let q: Vec<Vec<Complex>> = (0..r)
        .map(|j| (0..r).map(|i| Complex::with_val(prec, p[i][j].conj_ref()) * Float::with_val(prec, &mults[i]) / degrees[j]).collect())
        .collect();
    let tol = cfg.eps * (order as f64) * (order as f64);
    for i in 0..r {
        for k in 0..r {
            let mut s = Complex::new(prec);
            for j in 0..r {
                s += Complex::with_val(prec, &p[i][j] * &q[j][k]);
            }
            if i == k {
                s -= order;
            }
            let e = cabs(&s);
            if e > tol {
                return Err(SpectraError::Residual { what: format!("(PQ - nI)[{},{}]", i, k), value: e, eps: tol });
            }
        }
    }
    Ok(q)
}

/// `κ_{ijk} = (m_i m_j / n) Σ_l P_{il} P_{jl} conj(P_{kl}) / k_l²`.
pub fn krein(p: &[Vec<Complex>], mults: &[Rational], degrees: &[i64], order: i64, cfg: &SpectraConfig) -> Result<Vec<Vec<Vec<Complex>>>, SpectraError> {
    let prec = cfg.precision;
    let r = p.len();
    let mut out = vec![vec![vec![Complex::new(prec); r]; r]; r];
    for i in 0..r {
        for j in 0..r {
            let f = Float::with_val(prec, Rational::from(&mults[i] * &mults[j]) / order);
            for k in 0..r {
                let mut s = Complex::new(prec);
                for l in 0..r {
                    let t = Complex::with_val(prec, &p[i][l] * &p[j][l]) * Complex::with_val(prec, p[k][l].conj_ref());
                    s += t / (degrees[l] * degrees[l]);
                }
                out[i][j][k] = s * &f;
            }
        }
    }
    let tol = cfg.eps * (order as f64).powi(3);
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let e = cabs(&Complex::with_val(prec, &out[i][j][k] - &out[j][i][k]));
                if e > tol {
                    return Err(SpectraError::Residual { what: format!("κ[{},{},{}] symmetry", i, j, k), value: e, eps: tol });
                }
            }
        }
    }
    Ok(out)
}

/// P, Q and Krein parameters of a verified instance.
pub fn spectral_data(inst: &Instance, cfg: &SpectraConfig) -> Result<SpectralData, SpectraError> {
    let (p, orbit_of_row, mult) = eigenmatrix_p(inst, cfg)?;
    let mults: Vec<Rational> = orbit_of_row.iter().map(|&o| mult.orbits[o].multiplicity.clone()).collect();
    let q = eigenmatrix_q(&p, &mults, &inst.degrees, inst.order, cfg)?;
    let krein = krein(&p, &mults, &inst.degrees, inst.order, cfg)?;
    Ok(SpectralData { precision: cfg.precision, eps: cfg.eps, order: inst.order, degrees: inst.degrees.clone(), multiplicities: mults, orbit_of_row, p, q, krein })
}

impl SpectralData {
    pub fn rank(&self) -> usize {
        self.p.len()
    }

    /// `(L*_i)[k][j] = κ_{ijk}`.
    pub fn lstar(&self, i: usize) -> Vec<Vec<Complex>> {
        let r = self.rank();
        (0..r).map(|k| (0..r).map(|j| self.krein[i][j][k].clone()).collect()).collect()
    }

    /// Real parts, for display and comparison.
    pub fn to_f64(m: &[Vec<Complex>]) -> Vec<Vec<f64>> {
        m.iter().map(|row| row.iter().map(|z| z.real().to_f64()).collect()).collect()
    }

    pub fn is_real(&self) -> bool {
        self.p.iter().flatten().all(|z| z.imag().to_f64().abs() < self.eps * self.order as f64)
    }

    /// `(1/n) Σ_i m_i P_{ij}^e`, the numeric counterpart of `n (b_j^e)_{0,0} / n`.
    pub fn power_trace(&self, j: usize, e: u32) -> Complex {
        let prec = self.precision;
        let mut s = Complex::new(prec);
        for (row, m) in self.p.iter().zip(&self.multiplicities) {
            s += Complex::with_val(prec, row[j].clone().pow(e)) * Float::with_val(prec, m);
        }
        s / self.order
    }

    /// Largest `|Σ_j P_{ij} conj(P_{lj}) / k_j|` over distinct rows.
    pub fn orthogonality_residual(&self) -> f64 {
        let prec = self.precision;
        let r = self.rank();
        let mut worst: f64 = 0.0;
        for i in 0..r {
            for l in 0..r {
                if i == l {
                    continue;
                }
                let mut s = Complex::new(prec);
                for j in 0..r {
                    s += Complex::with_val(prec, &self.p[i][j] * Complex::with_val(prec, self.p[l][j].conj_ref())) / self.degrees[j];
                }
                worst = worst.max(cabs(&s));
            }
        }
        worst
    }

    /// Largest entry of `|PQ - nI|`.
    pub fn pq_residual(&self) -> f64 {
        let prec = self.precision;
        let r = self.rank();
        let mut worst: f64 = 0.0;
        for i in 0..r {
            for k in 0..r {
                let mut s = Complex::new(prec);
                for j in 0..r {
                    s += Complex::with_val(prec, &self.p[i][j] * &self.q[j][k]);
                }
                if i == k {
                    s -= self.order;
                }
                worst = worst.max(cabs(&s));
            }
        }
        worst
    }

    /// Render a matrix with `digits` significant digits, exact rationals
    /// shown as fractions.
    pub fn render(&self, m: &[Vec<Complex>], digits: usize, max_den: u64) -> Vec<Vec<String>> {
        let tol = self.eps * (self.order as f64).powi(3);
        m.iter().map(|row| row.iter().map(|z| render_value(z, digits, max_den, tol)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::fixtures::{n249, n35, N35_P, N35_Q};

    fn k(n: i64) -> Instance {
        Instance::new(vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, n - 1], vec![1, n - 2]]]).unwrap()
    }

    #[test]
    fn complete_graph() {
        let sd = spectral_data(&k(6), &SpectraConfig::default()).unwrap();
        assert_eq!(SpectralData::to_f64(&sd.p), vec![vec![1.0, 5.0], vec![1.0, -1.0]]);
        let q = SpectralData::to_f64(&sd.q);
        assert!((q[0][1] - 5.0).abs() < 1e-30 && (q[1][1] + 1.0).abs() < 1e-30);
        let l0 = SpectralData::to_f64(&sd.lstar(0));
        assert!((l0[0][0] - 1.0).abs() < 1e-30 && (l0[1][1] - 1.0).abs() < 1e-30 && l0[0][1].abs() < 1e-30);
    }

    fn matches_rows(ours: &[Vec<f64>], shown: &[[f64; 5]; 5], tol: f64) -> bool {
        shown.iter().all(|srow| ours.iter().any(|orow| orow.iter().zip(srow).all(|(a, b)| (a - b).abs() < tol)))
    }

    #[test]
    fn n35_eigenmatrices() {
        let sd = spectral_data(&n35(), &SpectraConfig::default()).unwrap();
        let p = SpectralData::to_f64(&sd.p);
        assert_eq!(p[0], vec![1.0, 4.0, 6.0, 12.0, 12.0]);
        assert!(matches_rows(&p, &N35_P, 1e-4));
        let q = SpectralData::to_f64(&sd.q);
        let qt: Vec<Vec<f64>> = (0..5).map(|i| (0..5).map(|j| q[j][i]).collect()).collect();
        let shown_t: [[f64; 5]; 5] = std::array::from_fn(|i| std::array::from_fn(|j| N35_Q[j][i]));
        assert!(matches_rows(&qt, &shown_t, 1e-4));
        assert!(sd.pq_residual() < 1e-60);
        assert!(sd.orthogonality_residual() < 1e-60);
        assert!(sd.is_real());
    }

    #[test]
    fn n249_self_dual_shape() {
        let sd = spectral_data(&n249(), &SpectraConfig::default()).unwrap();
        assert!(sd.pq_residual() < 1e-60);
        assert!(sd.multiplicities.iter().skip(1).all(|m| *m == 62));
        let l1 = SpectralData::to_f64(&sd.lstar(1));
        assert_eq!(l1.len(), 5);
    }

    #[test]
    fn triangle_trace_agrees() {
        let inst = n35();
        let sd = spectral_data(&inst, &SpectraConfig::default()).unwrap();
        for j in 1..5 {
            let b = &inst.matrices[j];
            let b2 = crate::structcheck::mat_mul_big(&to_big(b), &to_big(b));
            let b3 = crate::structcheck::mat_mul_big(&b2, &to_big(b));
            let exact = b3[0][0].to_f64();
            assert!((sd.power_trace(j, 3).real().to_f64() - exact).abs() < 1e-50);
        }
    }

    fn to_big(m: &[Vec<i64>]) -> Vec<Vec<rug::Integer>> {
        m.iter().map(|r| r.iter().map(|&x| rug::Integer::from(x)).collect()).collect()
    }

    #[test]
    fn nonsymmetric_complex_spectrum() {
        // cyclic group of order 3
        let b0 = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let b1 = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        let b2 = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]];
        let inst = Instance::new(vec![b0, b1, b2]).unwrap();
        let sd = spectral_data(&inst, &SpectraConfig::default()).unwrap();
        assert!(!sd.is_real());
        assert!(sd.pq_residual() < 1e-60);
    }
}
