use super::StructError;
use crate::exactpoly::univariate::UPoly;
use rug::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GaloisTag {
    C1,
    C2,
    C3,
    S3,
    C4,
    V4,
    D4,
    A4,
    S4,
}

/// Isomorphism type of the Galois group of an irreducible polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaloisClass {
    pub tag: GaloisTag,
    pub abelian: bool,
}

impl GaloisClass {
    pub fn new(tag: GaloisTag) -> Self {
        let abelian = matches!(tag, GaloisTag::C1 | GaloisTag::C2 | GaloisTag::C3 | GaloisTag::C4 | GaloisTag::V4);
        GaloisClass { tag, abelian }
    }
}

impl fmt::Display for GaloisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.tag)
    }
}

fn is_square_int(n: &Integer) -> bool {
    *n >= 0 && n.is_perfect_square()
}

/// `u` is a square in `Q(sqrt(disc))`.
fn square_in_quadratic_ext(u: &Integer, disc: &Integer) -> bool {
    *u == 0 || is_square_int(u) || is_square_int(&Integer::from(u * disc))
}

/// Galois class of an irreducible polynomial of degree at most 4.
pub fn galois_class(p: &UPoly) -> Result<GaloisClass, StructError> {
    let d = p.degree();
    if p.is_zero() || d == 0 {
        return Err(StructError::Unsupported("constant polynomial".into()));
    }
    if d > 4 {
        return Err(StructError::Unsupported(format!("Galois class of degree {}", d)));
    }
    if d >= 2 && !p.rational_roots().is_empty() {
        return Err(StructError::Reducible(p.to_string()));
    }
    let tag = match d {
        1 => GaloisTag::C1,
        2 => GaloisTag::C2,
        3 => {
            if is_square_int(&p.discriminant()) {
                GaloisTag::C3
            } else {
                GaloisTag::S3
            }
        }
        _ => quartic_tag(p)?,
    };
    Ok(GaloisClass::new(tag))
}

fn quartic_tag(p: &UPoly) -> Result<GaloisTag, StructError> {
    // monic transform: y^4 + a y^3 + b y^2 + c y + e with y = lc·x
    let l = p.lc();
    let a = p.coeff(3);
    let b = Integer::from(&p.coeff(2) * &l);
    let c = p.coeff(1) * Integer::from(&l * &l);
    let e = p.coeff(0) * Integer::from(&l * &l) * &l;
    let monic = UPoly::new(vec![e.clone(), c.clone(), b.clone(), a.clone(), Integer::from(1)]);
    let disc = monic.discriminant();
    // resolvent x^3 - b x^2 + (ac - 4e) x - (a^2 e - 4 b e + c^2)
    let r1 = Integer::from(&a * &c) - Integer::from(4 * &e);
    let r0 = -(Integer::from(&a * &a) * &e - Integer::from(4 * &b) * &e + Integer::from(&c * &c));
    let resolvent = UPoly::new(vec![r0, r1, Integer::from(-&b), Integer::from(1)]);
    let roots = resolvent.integer_roots();
    let square = is_square_int(&disc);
    Ok(match roots.len() {
        0 if square => GaloisTag::A4,
        0 => GaloisTag::S4,
        1 => {
            // Kappe–Warren: C4 iff x^2 - r x + e and x^2 + a x + (b - r) split over Q(sqrt(disc))
            let r = &roots[0];
            let u1 = Integer::from(r * r) - Integer::from(4 * &e);
            let u2 = Integer::from(&a * &a) - Integer::from(4 * Integer::from(&b - r));
            if square_in_quadratic_ext(&u1, &disc) && square_in_quadratic_ext(&u2, &disc) {
                GaloisTag::C4
            } else {
                GaloisTag::D4
            }
        }
        _ => GaloisTag::V4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tag(c: &[i64]) -> GaloisTag {
        galois_class(&UPoly::from_i64(c)).unwrap().tag
    }

    #[test]
    fn low_degrees() {
        assert_eq!(tag(&[-3, 1]), GaloisTag::C1);
        assert_eq!(tag(&[1, 0, 1]), GaloisTag::C2);
        assert_eq!(tag(&[1, -3, 0, 1]), GaloisTag::C3);
        assert_eq!(UPoly::from_i64(&[2, -6, 0, 1]).discriminant(), 756);
        assert_eq!(tag(&[2, -6, 0, 1]), GaloisTag::S3);
    }

    #[test]
    fn quartic_classes() {
        assert_eq!(tag(&[12, -57, -93, 1, 1]), GaloisTag::S4);
        // x^4 + 1: V4
        assert_eq!(tag(&[1, 0, 0, 0, 1]), GaloisTag::V4);
        // x^4 - 2: D4
        assert_eq!(tag(&[-2, 0, 0, 0, 1]), GaloisTag::D4);
        // x^4 + x^3 + x^2 + x + 1: C4
        assert_eq!(tag(&[1, 1, 1, 1, 1]), GaloisTag::C4);
        // x^4 + 8x + 12: A4
        assert_eq!(tag(&[12, 8, 0, 0, 1]), GaloisTag::A4);
        // x^4 - 4x^2 + 2: C4 (real cyclotomic-type field of conductor 16)
        assert_eq!(tag(&[2, 0, -4, 0, 1]), GaloisTag::C4);
        // x^4 - 10x^2 + 1: V4
        assert_eq!(tag(&[1, 0, -10, 0, 1]), GaloisTag::V4);
        // non-monic D4: 2x^4 - 1
        assert_eq!(tag(&[-1, 0, 0, 0, 2]), GaloisTag::D4);
    }

    #[test]
    fn abelian_flags() {
        for t in [GaloisTag::C1, GaloisTag::C2, GaloisTag::C3, GaloisTag::C4, GaloisTag::V4] {
            assert!(GaloisClass::new(t).abelian);
        }
        for t in [GaloisTag::S3, GaloisTag::D4, GaloisTag::A4, GaloisTag::S4] {
            assert!(!GaloisClass::new(t).abelian);
        }
    }

    #[test]
    fn rejects_reducible_and_high_degree() {
        assert!(galois_class(&UPoly::from_i64(&[-1, 0, 1])).is_err());
        assert!(galois_class(&UPoly::from_i64(&[1, 0, 0, 0, 0, 1])).is_err());
    }
}
