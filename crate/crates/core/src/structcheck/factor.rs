use super::StructError;
use crate::exactpoly::univariate::UPoly;
use rug::{Integer, Rational};
use std::cmp::Ordering;

/// Positive divisors of a nonzero integer, ascending.
pub(crate) fn divisors(n: &Integer) -> Vec<Integer> {
    let n = Integer::from(n.abs_ref());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = Integer::from(1);
    loop {
        let sq = Integer::from(&d * &d);
        if sq > n {
            break;
        }
        if n.is_divisible(&d) {
            let q = Integer::from(&n / &d);
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn normalize(p: &UPoly) -> UPoly {
    let pp = p.primitive_part();
    if pp.lc() < 0 {
        pp.neg()
    } else {
        pp
    }
}

fn linear_from_root(r: &Rational) -> UPoly {
    // q x - p
    UPoly::new(vec![Integer::from(-r.numer()), r.denom().clone()])
}

/// Root of a linear factor.
pub fn linear_root_of(p: &UPoly) -> Option<Rational> {
    (p.degree() == 1).then(|| Rational::from((Integer::from(-p.coeff(0)), p.coeff(1))))
}

/// Ordering used for factor lists: by degree, linear factors by descending
/// root, then by coefficients.
pub fn factor_cmp(a: &UPoly, b: &UPoly) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| match (linear_root_of(a), linear_root_of(b)) {
        (Some(ra), Some(rb)) => rb.cmp(&ra),
        _ => a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()),
    })
}

fn quadratic_factor(g: &UPoly) -> Option<UPoly> {
    let c0 = g.coeff(0);
    let g1 = g.eval(&Integer::from(1));
    let gm1 = g.eval(&Integer::from(-1));
    if c0 == 0 || g1 == 0 || gm1 == 0 {
        return None;
    }
    let d1 = divisors(&g1);
    for a in divisors(&g.lc()) {
        for cabs in divisors(&c0) {
            for c in [cabs.clone(), Integer::from(-&cabs)] {
                for dabs in &d1 {
                    for d in [dabs.clone(), Integer::from(-dabs)] {
                        // a + b + c = d divides g(1)
                        let b = Integer::from(&d - &a) - &c;
                        let at_m1 = Integer::from(&a - &b) + &c;
                        if at_m1 == 0 || !gm1.is_divisible(&at_m1) {
                            continue;
                        }
                        let q = UPoly::new(vec![c.clone(), b, a.clone()]);
                        if g.div_exact(&q).is_some() {
                            return Some(q);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Complete factorization over the integers of a primitive polynomial of
/// degree at most 5, with repeated factors listed repeatedly.
pub fn factor_int_poly(p: &UPoly) -> Result<Vec<UPoly>, StructError> {
    if p.is_zero() {
        return Err(StructError::Unsupported("factoring the zero polynomial".into()));
    }
    if p.degree() > 5 {
        return Err(StructError::Unsupported(format!("degree {} factorization", p.degree())));
    }
    let mut g = normalize(p);
    let mut out = Vec::new();
    for r in g.rational_roots() {
        let lin = linear_from_root(&r);
        while let Some(q) = g.div_exact(&lin) {
            out.push(lin.clone());
            g = q;
        }
    }
    if g.degree() >= 4 {
        if let Some(q) = quadratic_factor(&g) {
            let rest = g.div_exact(&q).expect("checked divisibility");
            out.push(normalize(&q));
            out.push(normalize(&rest));
            g = UPoly::constant(1);
        }
    }
    if g.degree() >= 1 {
        out.push(g);
    }
    out.sort_by(factor_cmp);
    Ok(out)
}

/// Render as `(x-62)(x^4+x^3-93x^2-57x+12)` with repeated factors as powers.
pub fn format_factorization(factors: &[UPoly]) -> String {
    let mut s = String::new();
    let mut i = 0;
    while i < factors.len() {
        let mut e = 1;
        while i + e < factors.len() && factors[i + e] == factors[i] {
            e += 1;
        }
        s.push('(');
        s.push_str(&factors[i].display_with("x"));
        s.push(')');
        if e > 1 {
            s.push('^');
            s.push_str(&e.to_string());
        }
        i += e;
    }
    s
}

fn parse_upoly(text: &str) -> Result<UPoly, StructError> {
    let bad = || StructError::Parse(text.to_string());
    let t: String = text.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
    let bytes = t.as_bytes();
    let mut coeffs: Vec<Integer> = Vec::new();
    let mut pos = 0;
    if bytes.is_empty() {
        return Err(bad());
    }
    while pos < bytes.len() {
        let mut sign = 1;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            sign = if bytes[pos] == b'-' { -1 } else { 1 };
            pos += 1;
        } else if pos > 0 {
            return Err(bad());
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let mut c = if pos > start { t[start..pos].parse::<Integer>().map_err(|_| bad())? } else { Integer::from(1) };
        if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
        }
        let mut e = 0usize;
        if pos < bytes.len() && bytes[pos] == b'x' {
            pos += 1;
            e = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let s2 = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                e = t[s2..pos].parse().map_err(|_| bad())?;
            }
        } else if pos == start {
            return Err(bad());
        }
        c *= sign;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, Integer::new());
        }
        coeffs[e] += c;
    }
    Ok(UPoly::new(coeffs))
}

/// Parse a product of parenthesized factors with optional exponents, as
/// printed by [`format_factorization`]. A bare polynomial is one factor.
pub fn parse_factorization(text: &str) -> Result<Vec<UPoly>, StructError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if !t.starts_with('(') {
        return Ok(vec![parse_upoly(&t)?]);
    }
    let mut out = Vec::new();
    let mut rest = t.as_str();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(StructError::Parse(text.to_string()));
        }
        let close = rest.find(')').ok_or_else(|| StructError::Parse(text.to_string()))?;
        let f = parse_upoly(&rest[1..close])?;
        rest = &rest[close + 1..];
        let mut e = 1usize;
        if let Some(r) = rest.strip_prefix('^') {
            let n = r.bytes().take_while(|b| b.is_ascii_digit()).count();
            e = r[..n].parse().map_err(|_| StructError::Parse(text.to_string()))?;
            rest = &r[n..];
        }
        for _ in 0..e {
            out.push(f.clone());
        }
    }
    out.sort_by(factor_cmp);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structcheck::charpoly;
    use crate::workbench::fixtures::n35;

    fn product(fs: &[UPoly]) -> UPoly {
        fs.iter().fold(UPoly::constant(1), |a, f| a.mul(f))
    }

    #[test]
    fn difference_of_squares() {
        let f = factor_int_poly(&UPoly::from_i64(&[-1, 0, 1])).unwrap();
        assert_eq!(f, vec![UPoly::linear_root(1), UPoly::linear_root(-1)]);
        assert_eq!(format_factorization(&f), "(x-1)(x+1)");
    }

    #[test]
    fn n35_b2_repeated_roots() {
        let f = factor_int_poly(&charpoly(&n35().matrices[2])).unwrap();
        assert_eq!(format_factorization(&f), "(x-6)^2(x+1)^3");
    }

    #[test]
    fn quartic_irreducible() {
        let q = UPoly::from_i64(&[12, -57, -93, 1, 1]);
        assert_eq!(factor_int_poly(&q).unwrap(), vec![q]);
    }

    #[test]
    fn quadratic_pairs_and_quintics() {
        let a = UPoly::from_i64(&[1, 0, 1]);
        let b = UPoly::from_i64(&[-2, 1, 1]).mul(&UPoly::from_i64(&[3, 1, 2]));
        // (x^2+1)(x+2)(x-1)(2x^2+x+3) has degree 6; drop a linear factor
        let p = a.mul(&UPoly::from_i64(&[3, 1, 2])).mul(&UPoly::linear_root(5));
        let f = factor_int_poly(&p).unwrap();
        assert_eq!(product(&f), p);
        assert_eq!(f.len(), 3);
        let q = a.mul(&UPoly::from_i64(&[-2, 0, 0, 1]));
        let f = factor_int_poly(&q).unwrap();
        assert_eq!(f, vec![a.clone(), UPoly::from_i64(&[-2, 0, 0, 1])]);
        assert_eq!(product(&factor_int_poly(&b).unwrap()), b);
        let sq = a.mul(&a);
        assert_eq!(factor_int_poly(&sq).unwrap(), vec![a.clone(), a]);
    }

    #[test]
    fn zero_root_rendering() {
        let p = UPoly::linear_root(14).mul(&UPoly::linear_root(0)).mul(&UPoly::from_i64(&[-16, -72, 2, 1]));
        let f = factor_int_poly(&p).unwrap();
        assert_eq!(format_factorization(&f), "(x-14)(x)(x^3+2x^2-72x-16)");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["(x-6)^2(x+1)^3", "(x-14)(x)(x^3+2x^2-72x-16)", "(x-62)(x^4+x^3-93x^2-57x+12)", "(x-1)(x+1)"] {
            let f = parse_factorization(s).unwrap();
            assert_eq!(format_factorization(&f), s);
        }
        assert_eq!(parse_factorization("x^2-1").unwrap(), vec![UPoly::from_i64(&[-1, 0, 1])]);
        assert!(parse_factorization("(x-").is_err());
    }

    #[test]
    fn divisor_lists() {
        let d: Vec<i64> = divisors(&Integer::from(-12)).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }
}
