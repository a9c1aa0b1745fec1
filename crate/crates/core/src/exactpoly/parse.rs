use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::poly::{MPoly, Ring};
use super::PolyError;
use rug::{Integer, Rational};
use std::fmt::Write;
use std::sync::Arc;

/// Render as `c*x1^e1*...` terms in descending order, joined by `+`/`-`.
pub fn format_poly(p: &MPoly, order: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ring = p.ring();
    let mut out = String::new();
    for (i, (m, c)) in p.sorted_terms(order).into_iter().enumerate() {
        let neg = *c < 0;
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let abs = Rational::from(c.abs_ref());
        let unit = abs == 1;
        if !unit || m.is_one() {
            write!(out, "{}", abs).unwrap();
        }
        let mut first = unit;
        for v in m.support() {
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(ring.name(v));
            let e = m.exp(v);
            if e > 1 {
                write!(out, "^{}", e).unwrap();
            }
        }
    }
    out
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos > start {
            Some(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
        } else {
            None
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphabetic() || self.s[self.pos] == b'_') {
            self.pos += 1;
            while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                self.pos += 1;
            }
            Some(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
        } else {
            None
        }
    }
}

/// Parse the text format produced by [`format_poly`].
pub fn parse_poly(ring: &Arc<Ring>, text: &str) -> Result<MPoly, PolyError> {
    let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
    let mut p = MPoly::zero(ring);
    let mut first = true;
    loop {
        let sign = match cur.peek() {
            None if first => return cur.err("empty polynomial"),
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                1
            }
            Some(b'-') => {
                cur.pos += 1;
                -1
            }
            Some(_) if first => 1,
            Some(_) => return cur.err("expected `+` or `-`"),
        };
        first = false;
        let mut coeff = Rational::from(sign);
        let mut mono = Monomial::one(ring.nvars());
        if let Some(d) = cur.digits() {
            let mut q = Rational::from(d.parse::<Integer>().unwrap());
            if cur.peek() == Some(b'/') {
                cur.pos += 1;
                let den = match cur.digits() {
                    Some(x) => x.parse::<Integer>().unwrap(),
                    None => return cur.err("expected denominator"),
                };
                if den == 0 {
                    return cur.err("zero denominator");
                }
                q /= Rational::from(den);
            }
            coeff *= q;
            if cur.peek() == Some(b'*') {
                cur.pos += 1;
            } else {
                p.add_term(mono, coeff);
                continue;
            }
        }
        loop {
            let name = match cur.ident() {
                Some(n) => n,
                None => return cur.err("expected variable"),
            };
            let v = ring.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            let mut e: u16 = 1;
            if cur.peek() == Some(b'^') {
                cur.pos += 1;
                e = match cur.digits().and_then(|d| d.parse::<u16>().ok()) {
                    Some(e) => e,
                    None => return cur.err("expected exponent"),
                };
            }
            mono.set_exp(v, mono.exp(v) + e);
            if cur.peek() == Some(b'*') {
                cur.pos += 1;
            } else {
                break;
            }
        }
        p.add_term(mono, coeff);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let ring = Ring::new(["x5", "k1"]);
        let s = "36*x5^2-24*x5*k1+4*k1^2+32*x5-11*k1+7";
        let p = parse_poly(&ring, s).unwrap();
        assert_eq!(p.to_string(), s);
        let q = parse_poly(&ring, "-3/4*x5*k1 + x5 - 1/2").unwrap();
        assert_eq!(q.to_string(), "-3/4*x5*k1+x5-1/2");
        assert_eq!(parse_poly(&ring, &q.to_string()).unwrap(), q);
    }

    #[test]
    fn zero_and_errors() {
        let ring = Ring::new(["x"]);
        assert!(parse_poly(&ring, "0").unwrap().is_zero());
        assert!(parse_poly(&ring, "x-x").unwrap().is_zero());
        assert!(matches!(parse_poly(&ring, "y"), Err(PolyError::UnknownVariable(_))));
        assert!(matches!(parse_poly(&ring, "2*"), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_poly(&ring, ""), Err(PolyError::Parse { .. })));
    }
}
