use super::fixtures::{FactorizationFixture, GaloisFamily};
use super::WorkbenchError;
use crate::exactpoly::univariate::UPoly;
use crate::feasibility::{feasibility, FeasConfig, FeasibilityReport};
use crate::spectra::{spectral_data, SpectralData};
use crate::structcheck::{canonical_form, galois_class, is_cyclotomic, linear_root_of, multiplicities, parse_factorization, verify_sita, GaloisTag, Instance};
use rug::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Rendered eigenmatrices with their residuals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectraSummary {
    pub precision: u32,
    pub p: Vec<Vec<String>>,
    pub q: Vec<Vec<String>>,
    pub pq_residual: f64,
    pub orthogonality_residual: f64,
}

impl SpectraSummary {
    pub fn new(sd: &SpectralData, max_den: u64) -> Self {
        SpectraSummary {
            precision: sd.precision,
            p: sd.render(&sd.p, 8, max_den),
            q: sd.render(&sd.q, 8, max_den),
            pq_residual: sd.pq_residual(),
            orthogonality_residual: sd.orthogonality_residual(),
        }
    }
}

/// Everything recomputed from a concrete instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub instance: Instance,
    pub sita: bool,
    pub sita_failures: Vec<String>,
    pub multiplicities: Vec<String>,
    pub integral: bool,
    pub factorizations: Vec<String>,
    /// `b<j>:<factor>:<class>` for each irreducible factor of degree ≥ 2.
    pub galois: Vec<String>,
    pub cyclotomic: bool,
    pub spectra: Option<SpectraSummary>,
    pub feasibility: Option<FeasibilityReport>,
}

impl Analysis {
    pub fn multiplicity_values(&self) -> Vec<Rational> {
        self.multiplicities.iter().filter_map(|s| s.parse().ok()).collect()
    }

    pub fn galois_tags(&self) -> Vec<String> {
        self.galois.iter().filter_map(|g| g.rsplit(':').next().map(str::to_string)).collect()
    }
}

/// Run the structural checks on `inst`, and the spectral and feasibility
/// battery when the multiplicities are integral.
pub fn analyze(inst: &Instance, cfg: &FeasConfig) -> Result<Analysis, WorkbenchError> {
    let rep = verify_sita(inst);
    let sita_failures: Vec<String> = rep.failures().map(|c| format!("{:?}: {}", c.axiom, c.detail)).collect();
    if !rep.passed() {
        return Ok(Analysis {
            instance: inst.clone(),
            sita: false,
            sita_failures,
            multiplicities: Vec::new(),
            integral: false,
            factorizations: Vec::new(),
            galois: Vec::new(),
            cyclotomic: false,
            spectra: None,
            feasibility: None,
        });
    }
    let canon = canonical_form(inst);
    let m = multiplicities(&canon)?;
    let cyc = is_cyclotomic(&canon)?;
    let galois = cyc.classes.iter().filter(|c| c.factor.degree() >= 2).map(|c| format!("b{}:{}:{}", c.basis, c.factor, c.class)).collect();
    let (spectra, feas) = if m.integral {
        let sd = spectral_data(&canon, &cfg.spectra)?;
        let report = feasibility(&canon, cfg, Some(&sd));
        (Some(SpectraSummary::new(&sd, cfg.spectra.max_den)), Some(report))
    } else {
        (None, None)
    };
    Ok(Analysis {
        instance: canon,
        sita: true,
        sita_failures,
        multiplicities: m.values().iter().map(|x| x.to_string()).collect(),
        integral: m.integral,
        factorizations: cyc.factorizations.clone(),
        galois,
        cyclotomic: cyc.cyclotomic,
        spectra,
        feasibility: feas,
    })
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {} rank {} degrees {:?}", self.instance.order, self.instance.rank, self.instance.degrees)?;
        if let Some(t) = self.instance.itype {
            writeln!(f, "type {t}")?;
        }
        write!(f, "{}", self.instance)?;
        if !self.sita {
            writeln!(f, "not a standard integral table algebra")?;
            for s in &self.sita_failures {
                writeln!(f, "  {s}")?;
            }
            return Ok(());
        }
        writeln!(f, "multiplicities {}{}", self.multiplicities.join(" "), if self.integral { "" } else { " (not integral)" })?;
        for (j, s) in self.factorizations.iter().enumerate() {
            writeln!(f, "charpoly b{} = {}", j + 1, s)?;
        }
        for g in &self.galois {
            writeln!(f, "galois {g}")?;
        }
        writeln!(f, "{}", if self.cyclotomic { "cyclotomic" } else { "noncyclotomic" })?;
        if let Some(s) = &self.spectra {
            writeln!(f, "P =")?;
            for row in &s.p {
                writeln!(f, "  {}", row.join("  "))?;
            }
            writeln!(f, "Q =")?;
            for row in &s.q {
                writeln!(f, "  {}", row.join("  "))?;
            }
            writeln!(f, "residuals PQ-nI {:.1e} orthogonality {:.1e}", s.pq_residual, s.orthogonality_residual)?;
        }
        if let Some(r) = &self.feasibility {
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// One column of a rationalized character table derived from a
/// factorization: degree, value at the rational character, and the
/// values on the irrational orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedColumn {
    pub degree: i64,
    pub rational_value: Option<i64>,
    /// Power sums `Σ θ` and `Σ θ²` over the orbit.
    pub orbit_sum: Rational,
    pub orbit_square_sum: Rational,
}

/// Outcome of checking one factorization fixture against its own
/// multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct FixtureCheck {
    pub name: String,
    pub columns: Vec<DerivedColumn>,
    /// Galois classes of the irreducible factors of degree ≥ 2.
    pub classes: Vec<GaloisTag>,
    pub order_ok: bool,
    /// `δ + Σ m_l θ_l = 0` for every column.
    pub trace_ok: bool,
    /// `δ² + Σ m_l θ_l² = n δ` for every column.
    pub second_moment_ok: bool,
    pub classes_ok: bool,
}

impl FixtureCheck {
    pub fn passed(&self) -> bool {
        self.order_ok && self.trace_ok && self.second_moment_ok && self.classes_ok
    }
}

fn roots_power_sums(f: &UPoly) -> (Rational, Rational) {
    // monic: x^d + c_{d-1} x^{d-1} + c_{d-2} x^{d-2} + ...
    let d = f.degree();
    let lc = Rational::from(f.lc());
    let e1 = -Rational::from(f.coeff(d - 1)) / lc.clone();
    let e2 = if d >= 2 { Rational::from(f.coeff(d - 2)) / lc } else { Rational::new() };
    let s2 = Rational::from(&e1 * &e1) - Rational::from(2) * e2;
    (e1, s2)
}

/// Split one factorization into the degree, a rational eigenvalue and an
/// orbit of `orbit_len` eigenvalues. Assignments that violate the trace
/// identity are skipped; the first consistent one is returned.
fn derive_column(factors: &[UPoly], family: GaloisFamily, mults: &[i64], order: i64) -> Option<DerivedColumn> {
    let mut rational: Vec<i64> = Vec::new();
    let mut irr: Vec<&UPoly> = Vec::new();
    for f in factors {
        match linear_root_of(f) {
            Some(r) => rational.push(r.numer().to_i64()?),
            None => irr.push(f),
        }
    }
    let degree = *rational.iter().max()?;
    let mut rest = rational.clone();
    rest.remove(rest.iter().position(|&x| x == degree)?);
    let (orbit_len, m_orbit, m_rat) = match family {
        GaloisFamily::FourTransitive => (4, mults[0], 0),
        GaloisFamily::ThreeTransitive => (3, mults[1], mults[0]),
    };
    let check = |a: Option<i64>, s1: Rational, s2: Rational| -> Option<DerivedColumn> {
        let av = Rational::from(a.unwrap_or(0));
        let tr = Rational::from(degree) + Rational::from(m_rat) * av.clone() + Rational::from(m_orbit) * s1.clone();
        let sq = Rational::from(degree * degree) + Rational::from(m_rat) * av.clone() * av + Rational::from(m_orbit) * s2.clone();
        (tr == 0 && sq == Rational::from(order * degree)).then_some(DerivedColumn { degree, rational_value: a, orbit_sum: s1, orbit_square_sum: s2 })
    };
    match (irr.as_slice(), family) {
        ([f], GaloisFamily::FourTransitive) if f.degree() == orbit_len && rest.is_empty() => {
            let (s1, s2) = roots_power_sums(f);
            check(None, s1, s2)
        }
        ([f], GaloisFamily::ThreeTransitive) if f.degree() == orbit_len && rest.len() == 1 => {
            let (s1, s2) = roots_power_sums(f);
            check(Some(rest[0]), s1, s2)
        }
        ([], GaloisFamily::ThreeTransitive) if rest.len() == 4 => {
            // the orbit is a rational value repeated three times
            let mut vals = rest.clone();
            vals.sort();
            vals.dedup();
            vals.iter().find_map(|&theta| {
                let mut others = rest.clone();
                for _ in 0..3 {
                    others.remove(others.iter().position(|&x| x == theta)?);
                }
                check(Some(others[0]), Rational::from(3 * theta), Rational::from(3 * theta * theta))
            })
        }
        _ => None,
    }
}

/// Check a published factorization list for internal consistency:
/// degrees sum to the order, the column identities hold, and every
/// cubic is S3 and every quartic S4.
pub fn check_factorization_fixture(fx: &FactorizationFixture) -> Result<FixtureCheck, WorkbenchError> {
    let mut columns = Vec::new();
    let mut classes = Vec::new();
    let mut identities = true;
    for s in &fx.factorizations {
        let fs = parse_factorization(s)?;
        for f in fs.iter().filter(|f| f.degree() >= 2) {
            classes.push(galois_class(f)?.tag);
        }
        match derive_column(&fs, fx.family, &fx.multiplicities, fx.order) {
            Some(c) => columns.push(c),
            None => identities = false,
        }
    }
    let total: i64 = 1 + columns.iter().map(|c| c.degree).sum::<i64>();
    let mult_total = match fx.family {
        GaloisFamily::FourTransitive => 1 + 4 * fx.multiplicities[0],
        GaloisFamily::ThreeTransitive => 1 + fx.multiplicities[0] + 3 * fx.multiplicities[1],
    };
    let want = match fx.family {
        GaloisFamily::FourTransitive => GaloisTag::S4,
        GaloisFamily::ThreeTransitive => GaloisTag::S3,
    };
    Ok(FixtureCheck {
        name: fx.name.clone(),
        order_ok: columns.len() == 4 && total == fx.order && mult_total == fx.order,
        trace_ok: identities,
        second_moment_ok: identities,
        classes_ok: !classes.is_empty() && classes.iter().all(|&c| c == want),
        columns,
        classes,
    })
}

/// Factorization lists agree up to a relabelling of `b_1..b_{r-1}`.
pub fn same_factorizations(a: &[String], b: &[String]) -> Result<bool, WorkbenchError> {
    let norm = |v: &[String]| -> Result<Vec<Vec<UPoly>>, WorkbenchError> {
        let mut out = Vec::new();
        for s in v {
            let mut fs = parse_factorization(s)?;
            fs.sort_by(crate::structcheck::factor_cmp);
            out.push(fs);
        }
        out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.iter().zip(y).map(|(p, q)| crate::structcheck::factor_cmp(p, q)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)));
        Ok(out)
    };
    Ok(norm(a)? == norm(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::fixtures::{factorization_fixtures, n249, n35};

    #[test]
    fn every_factorization_fixture_is_consistent() {
        for fx in factorization_fixtures() {
            let c = check_factorization_fixture(&fx).unwrap();
            assert!(c.passed(), "{}: {:?}", fx.name, c);
        }
    }

    #[test]
    fn n35_column_derivation() {
        let fx = factorization_fixtures().into_iter().find(|f| f.name == "3T35").unwrap();
        let c = check_factorization_fixture(&fx).unwrap();
        let d: Vec<(i64, Option<i64>)> = c.columns.iter().map(|c| (c.degree, c.rational_value)).collect();
        assert_eq!(d, vec![(4, Some(-1)), (6, Some(6)), (12, Some(-3)), (12, Some(-3))]);
        assert_eq!(c.classes, vec![GaloisTag::S3; 3]);
    }

    #[test]
    fn tampered_fixture_fails() {
        let mut fx = factorization_fixtures().into_iter().find(|f| f.name == "3T35").unwrap();
        fx.factorizations[0] = "(x-4)(x+1)(x^3-7x+2)".into();
        assert!(!check_factorization_fixture(&fx).unwrap().passed());
        fx.multiplicities = vec![5, 10];
        assert!(!check_factorization_fixture(&fx).unwrap().passed());
    }

    #[test]
    fn analyze_fixtures_match_lists() {
        let cfg = FeasConfig::default();
        let fixtures = factorization_fixtures();
        for (inst, name) in [(n35(), "3T35"), (n249(), "4T249")] {
            let a = analyze(&inst, &cfg).unwrap();
            let fx = fixtures.iter().find(|f| f.name == name).unwrap();
            assert!(a.sita && a.integral && !a.cyclotomic);
            assert!(same_factorizations(&a.factorizations, &fx.factorizations).unwrap(), "{:?}", a.factorizations);
            assert!(a.feasibility.as_ref().unwrap().feasible());
        }
    }

    #[test]
    fn analyze_reports_bad_instance() {
        let mut inst = n35();
        inst.matrices[1][1][1] += 1;
        let a = analyze(&inst, &FeasConfig::default()).unwrap();
        assert!(!a.sita);
        assert!(!a.sita_failures.is_empty());
        assert!(a.to_string().contains("not a standard"));
    }
}
