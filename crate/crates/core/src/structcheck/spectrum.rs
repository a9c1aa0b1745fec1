use super::charpoly::{charpoly, charpoly_big, mat_mul_big};
use super::factor::{factor_int_poly, format_factorization, linear_root_of};
use super::galois::{galois_class, GaloisClass};
use super::{Instance, StructError};
use crate::exactpoly::univariate::UPoly;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

/// One Galois orbit of irreducible characters, seen as an irreducible
/// factor of the characteristic polynomial of a separating combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterOrbit {
    pub factor: UPoly,
    #[serde(with = "rat_str")]
    pub multiplicity: Rational,
}

mod rat_str {
    use rug::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        v.to_string().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicities {
    /// Coefficients `c_j` of the combination `Σ c_j b_j` whose eigenvalues
    /// separate the characters.
    pub combination: Vec<i64>,
    /// Trivial orbit first, then the rest in factor order.
    pub orbits: Vec<CharacterOrbit>,
    pub integral: bool,
}

impl Multiplicities {
    /// One value per character: `m_0 = 1`, then the others ascending.
    pub fn values(&self) -> Vec<Rational> {
        let mut rest: Vec<Rational> = Vec::new();
        for o in &self.orbits[1..] {
            for _ in 0..o.factor.degree() {
                rest.push(o.multiplicity.clone());
            }
        }
        rest.sort();
        let mut out = vec![self.orbits[0].multiplicity.clone()];
        out.extend(rest);
        out
    }
}

fn combination(r: usize, attempt: usize) -> Vec<i64> {
    (0..r).map(|j| if j == 0 { 0 } else { 1 + ((j * (2 * attempt + 3) + attempt * attempt) % 13) as i64 }).collect()
}

pub(crate) fn combined_matrix(inst: &Instance, c: &[i64]) -> Vec<Vec<Integer>> {
    let r = inst.rank;
    let mut g = vec![vec![Integer::new(); r]; r];
    for (j, &cj) in c.iter().enumerate() {
        for i in 0..r {
            for k in 0..r {
                g[i][k] += Integer::from(cj) * inst.matrices[j][i][k];
            }
        }
    }
    g
}

/// Solve `A m = y` exactly; `None` if inconsistent or underdetermined.
fn solve_exact(mut a: Vec<Vec<Rational>>, mut y: Vec<Rational>) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut piv_row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(p) = (piv_row..rows).find(|&i| a[i][c] != 0) else { return None };
        a.swap(piv_row, p);
        y.swap(piv_row, p);
        let inv = Rational::from(1) / a[piv_row][c].clone();
        for x in a[piv_row].iter_mut() {
            *x *= &inv;
        }
        y[piv_row] *= &inv;
        for i in 0..rows {
            if i != piv_row && a[i][c] != 0 {
                let f = a[i][c].clone();
                for k in 0..cols {
                    let t = Rational::from(&f * &a[piv_row][k]);
                    a[i][k] -= t;
                }
                let t = Rational::from(&f * &y[piv_row]);
                y[i] -= t;
            }
        }
        pivots.push(c);
        piv_row += 1;
    }
    if y[piv_row..].iter().any(|v| *v != 0) {
        return None;
    }
    Some(y[..cols].to_vec())
}

/// Exact character multiplicities from traces of powers of a separating
/// combination, matched against Newton power sums of its factors.
pub fn multiplicities(inst: &Instance) -> Result<Multiplicities, StructError> {
    let r = inst.rank;
    if r == 1 {
        return Ok(Multiplicities { combination: vec![0], orbits: vec![CharacterOrbit { factor: UPoly::linear_root(0), multiplicity: Rational::from(1) }], integral: true });
    }
    if r > 5 {
        return Err(StructError::Unsupported(format!("multiplicities at rank {}", r)));
    }
    for attempt in 0..32 {
        let c = combination(r, attempt);
        let g = combined_matrix(inst, &c);
        let chi = charpoly_big(&g);
        if chi.gcd(&chi.derivative()).degree() > 0 {
            continue;
        }
        let factors = factor_int_poly(&chi)?;
        let trivial_root = Rational::from(c.iter().zip(&inst.degrees).map(|(a, b)| a * b).sum::<i64>());
        let Some(ti) = factors.iter().position(|f| linear_root_of(f).as_ref() == Some(&trivial_root)) else {
            return Err(StructError::Inconsistent("degree character missing from the spectrum".into()));
        };
        let mut ordered = vec![factors[ti].clone()];
        ordered.extend(factors.iter().enumerate().filter(|(i, _)| *i != ti).map(|(_, f)| f.clone()));
        // t(G^s) = n (G^s)_{0,0}
        let mut rhs = Vec::with_capacity(r);
        let mut pow: Vec<Vec<Integer>> = (0..r).map(|i| (0..r).map(|k| Integer::from((i == k) as i32)).collect()).collect();
        for _ in 0..r {
            rhs.push(Rational::from(Integer::from(&pow[0][0] * inst.order)));
            pow = mat_mul_big(&pow, &g);
        }
        let sums: Vec<Vec<Rational>> = ordered.iter().map(|f| f.power_sums(r - 1)).collect();
        let a: Vec<Vec<Rational>> = (0..r).map(|s| sums.iter().map(|ps| ps[s].clone()).collect()).collect();
        let m = solve_exact(a, rhs).ok_or_else(|| StructError::Inconsistent("power-sum system has no unique solution".into()))?;
        if m[0] != 1 {
            return Err(StructError::Inconsistent(format!("trivial character multiplicity {}", m[0])));
        }
        if let Some(bad) = m.iter().find(|x| **x <= 0) {
            return Err(StructError::Inconsistent(format!("nonpositive multiplicity {}", bad)));
        }
        let integral = m.iter().all(|x| *x.denom() == 1);
        let orbits = ordered.into_iter().zip(m).map(|(factor, multiplicity)| CharacterOrbit { factor, multiplicity }).collect();
        return Ok(Multiplicities { combination: c, orbits, integral });
    }
    Err(StructError::Degenerate("no separating combination found".into()))
}

/// Galois class of one irreducible factor of `charpoly(b_basis)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorClass {
    pub basis: usize,
    pub factor: UPoly,
    pub class: GaloisClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicReport {
    pub cyclotomic: bool,
    /// Rendered factorization of `charpoly(b_j)` for `j = 1..r-1`.
    pub factorizations: Vec<String>,
    pub classes: Vec<FactorClass>,
}

impl CyclotomicReport {
    pub fn nonabelian(&self) -> impl Iterator<Item = &FactorClass> {
        self.classes.iter().filter(|c| !c.class.abelian)
    }
}

/// Factorization of `charpoly(b_j)`, with the degree eigenvalue removed
/// before the irreducibility work.
pub fn factor_charpoly(inst: &Instance, j: usize) -> Result<Vec<UPoly>, StructError> {
    let chi = charpoly(&inst.matrices[j]);
    let lin = UPoly::linear_root(inst.degrees[j]);
    let rest = chi.div_exact(&lin).ok_or_else(|| StructError::Inconsistent(format!("degree {} is not an eigenvalue of b{}", inst.degrees[j], j)))?;
    let mut fs = factor_int_poly(&rest)?;
    fs.push(lin);
    fs.sort_by(super::factor::factor_cmp);
    Ok(fs)
}

/// Cyclotomic iff every irreducible factor of every characteristic
/// polynomial has an abelian Galois group.
pub fn is_cyclotomic(inst: &Instance) -> Result<CyclotomicReport, StructError> {
    let mut factorizations = Vec::new();
    let mut classes = Vec::new();
    for j in 1..inst.rank {
        let fs = factor_charpoly(inst, j)?;
        factorizations.push(format_factorization(&fs));
        let mut distinct = fs.clone();
        distinct.dedup();
        for f in distinct {
            let class = galois_class(&f)?;
            classes.push(FactorClass { basis: j, factor: f, class });
        }
    }
    let cyclotomic = classes.iter().all(|c| c.class.abelian);
    Ok(CyclotomicReport { cyclotomic, factorizations, classes })
}
