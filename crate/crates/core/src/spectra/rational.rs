use rug::{Complex, Float, Integer, Rational};

/// Best continued-fraction approximation with denominator at most
/// `max_den`, returned only if within `tol` of `x`.
pub fn recognize_rational(x: &Float, max_den: u64, tol: f64) -> Option<Rational> {
    let prec = x.prec();
    let mut rem = x.clone();
    let (mut p0, mut q0) = (Integer::from(0), Integer::from(1));
    let (mut p1, mut q1) = (Integer::from(1), Integer::from(0));
    let mut best: Option<Rational> = None;
    for _ in 0..64 {
        let a = rem.clone().floor().to_integer()?;
        let p2 = Integer::from(&a * &p1) + &p0;
        let q2 = Integer::from(&a * &q1) + &q0;
        if q2 > max_den {
            break;
        }
        let cand = Rational::from((p2.clone(), q2.clone()));
        let err = Float::with_val(prec, x - &cand).abs().to_f64();
        best = Some(cand);
        if err < tol {
            return best;
        }
        let frac = Float::with_val(prec, &rem - &a);
        if frac.is_zero() {
            break;
        }
        rem = Float::with_val(prec, 1) / frac;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    best.filter(|c| Float::with_val(prec, x - c).abs().to_f64() < tol)
}

fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Exact fraction when recognized, otherwise `digits` significant digits;
/// complex values as `a+bi`.
pub fn render_value(z: &Complex, digits: usize, max_den: u64, tol: f64) -> String {
    let re = z.real();
    let im = z.imag();
    let part = |x: &Float| match recognize_rational(x, max_den, tol) {
        Some(q) => q.to_string(),
        None => sig(x.to_f64(), digits),
    };
    if im.to_f64().abs() < tol {
        part(re)
    } else {
        let i = part(im);
        let sign = if i.starts_with('-') { "" } else { "+" };
        format!("{}{}{}i", part(re), sign, i)
    }
}
