use crate::exactpoly::univariate::UPoly;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

fn eval_c(p: &UPoly, z: &Complex, prec: u32) -> (Complex, Complex) {
    // value and derivative by Horner
    let mut v = Complex::new(prec);
    let mut d = Complex::new(prec);
    for a in p.coeffs().iter().rev() {
        d = Complex::with_val(prec, &d * z) + &v;
        v = Complex::with_val(prec, &v * z) + a;
    }
    (v, d)
}

fn abs(z: &Complex, prec: u32) -> Float {
    Float::with_val(prec, z.abs_ref())
}

fn newton_polish(p: &UPoly, z: &mut Complex, prec: u32, steps: usize) {
    for _ in 0..steps {
        let (v, d) = eval_c(p, z, prec);
        if d.is_zero() {
            return;
        }
        let dz = Complex::with_val(prec, &v / &d);
        *z -= &dz;
        if dz.is_zero() || abs(&dz, prec) < Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 4)) {
            return;
        }
    }
}

/// Real roots isolated exactly, then polished by Newton iteration.
fn real_roots(p: &UPoly, prec: u32) -> Vec<Complex> {
    let mut out = Vec::new();
    for (lo, hi) in p.isolate_real_roots() {
        if lo == hi {
            out.push(Complex::with_val(prec, (Float::with_val(prec, &lo), 0)));
            continue;
        }
        let (lo, hi) = p.refine(&lo, &hi, 60);
        let mid = Rational::from(&lo + &hi) / 2u32;
        let mut z = Complex::with_val(prec, (Float::with_val(prec, &mid), 0));
        newton_polish(p, &mut z, prec, 64);
        let x = z.real().clone();
        let inside = x >= Float::with_val(prec, &lo) && x <= Float::with_val(prec, &hi);
        if !inside {
            let (l2, h2) = p.refine(&lo, &hi, prec + 8);
            z = Complex::with_val(prec, (Float::with_val(prec, Rational::from(&l2 + &h2) / 2u32), 0));
        }
        out.push(Complex::with_val(prec, (z.real(), 0)));
    }
    out
}

/// Simultaneous Durand–Kerner iteration for all complex roots.
fn complex_roots(p: &UPoly, prec: u32) -> Vec<Complex> {
    let d = p.degree();
    let lc = Float::with_val(prec, &p.lc());
    let monic: Vec<Complex> = p.coeffs().iter().map(|a| Complex::with_val(prec, Float::with_val(prec, a) / &lc)).collect();
    let eval = |z: &Complex| {
        let mut v = Complex::new(prec);
        for a in monic.iter().rev() {
            v = Complex::with_val(prec, &v * z) + a;
        }
        v
    };
    let bound = Float::with_val(prec, &p.root_bound());
    let seed = Complex::with_val(prec, (0.4, 0.9));
    let mut zs: Vec<Complex> = (0..d).map(|k| Complex::with_val(prec, seed.clone().pow(k as u32)) * &bound).collect();
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 8));
    for _ in 0..2000 {
        let mut worst = Float::new(prec);
        for i in 0..d {
            let mut den = Complex::with_val(prec, (1, 0));
            for j in 0..d {
                if i != j {
                    den *= Complex::with_val(prec, &zs[i] - &zs[j]);
                }
            }
            if den.is_zero() {
                continue;
            }
            let step = Complex::with_val(prec, eval(&zs[i]) / &den);
            let a = abs(&step, prec);
            if a > worst {
                worst = a;
            }
            zs[i] -= step;
        }
        if worst < tol {
            break;
        }
    }
    for z in zs.iter_mut() {
        newton_polish(p, z, prec, 16);
    }
    zs
}

/// All complex roots of a squarefree polynomial at the given precision.
pub fn roots(p: &UPoly, prec: u32) -> Vec<Complex> {
    let d = p.degree();
    if d == 0 {
        return Vec::new();
    }
    if p.isolate_real_roots().len() == d {
        real_roots(p, prec)
    } else {
        complex_roots(p, prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_and_complex() {
        let p = UPoly::from_i64(&[2, -6, 0, 1]);
        let rs = roots(&p, 200);
        assert_eq!(rs.len(), 3);
        for r in &rs {
            assert!(abs(&eval_c(&p, r, 200).0, 200) < 1e-50);
        }
        let q = UPoly::from_i64(&[1, 1, 1]);
        let cs = roots(&q, 200);
        assert_eq!(cs.len(), 2);
        for r in &cs {
            assert!(abs(&eval_c(&q, r, 200).0, 200) < 1e-50);
            assert!(r.imag().clone().abs() > 0.5);
        }
    }
}
