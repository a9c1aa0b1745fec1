//! One PASS/FAIL line per acceptance criterion. Heavy or knowingly
//! failing checks are `#[ignore]`d; run them with `-- --ignored`.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rug::{Integer, Rational};
use sitawim::exactpoly::{buchberger_with, normal_form, s_polynomial, GbConfig, MPoly, Monomial, MonomialOrder, PolySet, Ring};
use sitawim::feasibility::triangle_counts;
use sitawim::solver::{run_search, Family};
use sitawim::spectra::{spectral_data, SpectraConfig};
use sitawim::structcheck::{canonical_form, charpoly, is_cyclotomic, eval_at_matrix, multiplicities, star_compatible_perms, verify_sita, Instance};
use sitawim::varietygen::{build_template_with, enumerate_rational_tables, Assumption, DegreeSymbols, InvolutionType, RationalCharTable, TemplateOptions};
use sitawim::workbench::analyze::check_factorization_fixture;
use sitawim::workbench::fixtures::{factorization_fixtures, n249, n35};
use sitawim::workbench::repro::{five_a1_reduction, four_a1_family_config, run_scenario, table_35, three_t_config, ReproOptions, ReproReport, A52_POINT_29};
use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

/// Written to the process stdout directly so the line survives output capture.
fn emit(s: String) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{s}").unwrap();
    out.flush().unwrap();
}

fn line(id: &str, pass: bool, elapsed: Duration, detail: &str) -> bool {
    emit(format!("{} criterion {id} [{:.1}s] {detail}", if pass { "PASS" } else { "FAIL" }, elapsed.as_secs_f64()));
    pass
}

fn scenario(name: &str, opts: &ReproOptions) -> ReproReport {
    let r = run_scenario(name, opts).unwrap();
    for c in r.checks.iter().filter(|c| !c.passed) {
        emit(format!("  {name}: {} failed: {}", c.name, c.detail));
    }
    r
}

fn checks_pass(r: &ReproReport, names: &[&str]) -> bool {
    names.iter().all(|n| r.get(n).is_some_and(|c| c.passed))
}

#[test]
fn criterion_01_4a1_reduction() {
    let t = Instant::now();
    let r = scenario("4a1-pseudocyclic", &ReproOptions::default());
    let ok = r.passed() && checks_pass(&r, &["one-polynomial", "matches-f", "chain"]);
    assert!(line("1", ok && t.elapsed() < Duration::from_secs(60), t.elapsed(), "one polynomial f, chain x1=x2, x2=k2-1-2x5"));
}

/// Instances from `f = 0` and the substitution chain at every `(x5, k1)`
/// with `x5 ≤ 100`, `k1 ≤ 40`, kept when they are SITAwIMs.
fn four_a1_brute_force() -> Vec<((i64, i64), Instance)> {
    let t = build_template_with(4, InvolutionType::A41, Assumption::Pseudocyclic, &TemplateOptions::new(DegreeSymbols::Homogeneous)).unwrap();
    let idx = |n: &str| t.ring.index_of(n).unwrap();
    let mut out = Vec::new();
    for k1 in 1..=40i64 {
        for x5 in 0..=100i64 {
            if 36 * x5 * x5 - 24 * x5 * k1 + 4 * k1 * k1 + 32 * x5 - 11 * k1 + 7 != 0 {
                continue;
            }
            let x2 = k1 - 1 - 2 * x5;
            let vals = [("x1", x2), ("x2", x2), ("x3", 4 * x5 - k1 + 2), ("x4", -2 * x5 + k1 - 1), ("x5", x5), ("k1", k1), ("k2", k1)];
            let mut v = vec![Integer::new(); t.ring.nvars()];
            for (n, x) in vals {
                v[idx(n)] = Integer::from(x);
            }
            let Some(m) = t.instantiate(&v) else { continue };
            if m.iter().flatten().flatten().any(|&e| e < 0) {
                continue;
            }
            let inst = Instance::new(m).unwrap();
            if verify_sita(&inst).passed() && multiplicities(&inst).unwrap().integral {
                out.push(((x5, k1), canonical_form(&inst)));
            }
        }
    }
    out
}

#[test]
fn criterion_02_4a1_family() {
    let t = Instant::now();
    let r = scenario("4a1-family", &ReproOptions::default());
    let found: BTreeSet<Vec<Vec<Vec<i64>>>> = run_search(&four_a1_family_config(40, 0)).unwrap().instances.into_iter().map(|i| i.matrices).collect();
    let brute = four_a1_brute_force();
    let points: Vec<(i64, i64)> = brute.iter().map(|(p, _)| *p).collect();
    let oracle: BTreeSet<Vec<Vec<Vec<i64>>>> = brute.into_iter().map(|(_, i)| i.matrices).collect();
    let ok = r.passed() && points == vec![(0, 1), (1, 5), (7, 21), (10, 33)] && found == oracle;
    assert!(line("2", ok && t.elapsed() < Duration::from_secs(60), t.elapsed(), &format!("(x5,k1) = {points:?}, search equals brute force, all verified and cyclotomic")));
}

/// Literal enumeration of the reduced pseudocyclic 5A1 system: every
/// nonnegative `(x9, x10, x13, x14) ≤ m` for `m ≤ max_m` is tested against
/// all remaining generators and the resolved variables.
fn five_a1_brute_force(max_m: i64) -> usize {
    let (t, red) = five_a1_reduction().unwrap();
    let r = &t.ring;
    let free: Vec<usize> = ["x9", "x10", "x13", "x14"].iter().map(|n| r.index_of(n).unwrap()).collect();
    let m = r.index_of("m").unwrap();
    let resolved = red.resolved();
    let mut hits = 0;
    for mv in 1..=max_m {
        let mut vals = vec![Rational::new(); r.nvars()];
        vals[m] = Rational::from(mv);
        let range = 0..=mv;
        for a in range.clone() {
            for b in range.clone() {
                for c in range.clone() {
                    for d in range.clone() {
                        for (v, x) in free.iter().zip([a, b, c, d]) {
                            vals[*v] = Rational::from(x);
                        }
                        if red.remaining.polys().iter().any(|p| p.eval(&vals) != 0) {
                            continue;
                        }
                        if resolved.iter().all(|(_, e)| {
                            let x = e.eval(&vals);
                            x.denom() == &1u32 && x >= 0
                        }) {
                            hits += 1;
                        }
                    }
                }
            }
        }
    }
    hits
}

#[test]
fn criterion_03_5a1_nonexistence() {
    let t = Instant::now();
    let r = scenario("5a1-nonexistence", &ReproOptions::default());
    let algebra = checks_pass(&r, &["w-polynomial", "w-odd", "parity-certificate", "m-even"]);
    let search = checks_pass(&r, &["exhaustive-search"]);
    let brute = five_a1_brute_force(24);
    let ok = algebra && search && brute == 0;
    let detail = format!("4*5184*W in elimination basis (x2=x1 adjoined), W(y,2k) odd, parity certificate without the adjoined relation, no point for m <= 200; literal enumeration m <= 24: {brute} points");
    assert!(line("3", ok && t.elapsed() < Duration::from_secs(1800), t.elapsed(), &detail));
}

#[test]
fn criterion_04_5a2_symmetry() {
    let t = Instant::now();
    let r = scenario("5a2-symmetry", &ReproOptions::default());
    let literal = checks_pass(&r, &["x16-x2", "x8-x4", "x11-x3"]);
    line("4", literal, t.elapsed(), "y^2 for x16=x2+y holds; x8=x4+y and x11=x3+y are refuted by the order-29 cyclotomic scheme (x8-x4=1, x11-x3=-1); the ideal forces x8=x3 and x11=x4 instead");
    // what does hold
    assert!(checks_pass(&r, &["variables", "linear-substitutions", "witness", "x16-x2", "x8-x3", "x11-x4"]));
    assert!(!r.get("x8-x4").unwrap().passed && !r.get("x11-x3").unwrap().passed);
    assert!(t.elapsed() < Duration::from_secs(7200));
}

#[test]
#[ignore = "y^2 is not in the ideal for x8 = x4 + y or x11 = x3 + y; see criterion_04"]
fn criterion_04_literal_pairs() {
    let r = run_scenario("5a2-symmetry", &ReproOptions::default()).unwrap();
    for pair in ["x16-x2", "x8-x4", "x11-x3"] {
        assert!(r.get(pair).unwrap().passed, "{}", r.get(pair).unwrap().detail);
    }
}

#[test]
fn criterion_05_5s_reduction() {
    let t = Instant::now();
    let r = scenario("5s-reduction", &ReproOptions::default());
    let ok = checks_pass(&r, &["m-even", "span-6"]);
    let detail = format!("{}; rational span 6", r.get("m-even").unwrap().detail);
    assert!(line("5", ok, t.elapsed(), &detail));
}

#[test]
fn criterion_06_n249_recovery() {
    let t = Instant::now();
    let r = scenario("n249-narrow", &ReproOptions::default());
    let ok = r.passed() && checks_pass(&r, &["one-noncyclotomic", "equals-display", "factorizations", "galois-s4"]);
    assert!(line("6", ok && t.elapsed() < Duration::from_secs(3600), t.elapsed(), "m=62 window: one noncyclotomic instance, equal to the displayed n=249 matrices, four S4 quartics"));
}

#[test]
fn criterion_07_n35_battery() {
    let t = Instant::now();
    let r = scenario("n35-battery", &ReproOptions::default());
    let names = [
        "multiplicities", "factorizations", "noncyclotomic-s3", "p-display", "q-display", "lstar-display", "lstar-exact", "handshake", "triangle-count", "closed-subsets", "absolute-bound",
        "krein-nonneg", "gegenbauer-m10",
    ];
    let ok = r.passed() && checks_pass(&r, &names);
    let detail = format!("P, Q within 1e-4; L* {}", r.get("lstar-display").unwrap().detail);
    assert!(line("7", ok && t.elapsed() < Duration::from_secs(60), t.elapsed(), &detail));
}

#[test]
fn criterion_08_n249_battery() {
    let t = Instant::now();
    let r = scenario("n249-battery", &ReproOptions::default());
    let ok = r.passed() && checks_pass(&r, &["p-display", "self-dual", "lstar-display", "handshake", "triangle-count", "closed-subsets", "absolute-bound", "krein-nonneg", "gegenbauer"]);
    let detail = format!("P within 1e-4, {}, L* {}", r.get("self-dual").unwrap().detail, r.get("lstar-display").unwrap().detail);
    assert!(line("8", ok && t.elapsed() < Duration::from_secs(60), t.elapsed(), &detail));
}

/// The nine defining identities, restated independently.
fn bullets(t: &RationalCharTable) -> bool {
    let (n, m1, m2) = (t.n, t.m1, t.m2);
    let d = t.degrees;
    let mut ok = d.iter().sum::<i64>() == n - 1 && m1 + 3 * m2 == n - 1;
    ok &= t.a.iter().sum::<i64>() == -1 && t.t.iter().sum::<i64>() == -3;
    for j in 0..4 {
        ok &= d[j] + m1 * t.a[j] + m2 * t.t[j] == 0;
        ok &= -d[j] <= t.a[j] && t.a[j] <= d[j] && -3 * d[j] <= t.t[j] && t.t[j] <= 3 * d[j];
    }
    // clear denominators: (1 + Σ a²/δ) m1 = n and 3 + Σ a t/δ = 0
    let l: i64 = d.iter().product();
    let s_aa: i64 = (0..4).map(|j| t.a[j] * t.a[j] * (l / d[j])).sum();
    let s_at: i64 = (0..4).map(|j| t.a[j] * t.t[j] * (l / d[j])).sum();
    ok && (l + s_aa) * m1 == n * l && 3 * l + s_at == 0
}

#[test]
fn criterion_09_tables() {
    let t = Instant::now();
    let tabs = enumerate_rational_tables(35);
    // the table read off the n = 35 factorization list
    let fx = factorization_fixtures().into_iter().find(|f| f.name == "3T35").unwrap();
    let cols = check_factorization_fixture(&fx).unwrap().columns;
    let mut derived: Vec<(i64, i64, i64)> = cols.iter().map(|c| (c.degree, c.rational_value.unwrap(), c.orbit_sum.numer().to_i64().unwrap())).collect();
    derived.sort();
    let want = table_35();
    let matches_list = derived == want.columns().to_vec() && (fx.multiplicities[0], fx.multiplicities[1]) == (want.m1, want.m2);
    let r = scenario("tables-35", &ReproOptions::default());
    let ok = matches_list && tabs.contains(&want) && tabs.iter().all(bullets) && r.passed();
    let detail = format!("{} tables; contains d=(4,6,12,12) a=(-1,6,-3,-3) t=(0,-3,0,0); all satisfy the nine identities", tabs.len());
    assert!(line("9", ok && t.elapsed() < Duration::from_secs(600), t.elapsed(), &detail));
}

#[test]
fn criterion_10_3t_search_order_35() {
    let t = Instant::now();
    let mut cfg = three_t_config(35, 0);
    cfg.family = Family::Tables { min_order: 35, max_order: 35 };
    let out = run_search(&cfg).unwrap();
    let nc: Vec<Instance> = out.instances.into_iter().filter(|i| !is_cyclotomic(i).unwrap().cyclotomic).collect();
    let ok = nc.len() == 1 && canonical_form(&nc[0]) == canonical_form(&n35());
    assert!(line("10", ok, t.elapsed(), "order 35 subset: exactly the n=35 example; orders 5..45 run with -- --ignored"));
}

#[test]
#[ignore = "about half an hour on one core"]
fn criterion_10_3t_search_orders_to_45() {
    let t = Instant::now();
    let r = scenario("3t-search", &ReproOptions::default());
    let ok = r.passed() && checks_pass(&r, &["complete", "known-found", "no-others"]);
    assert!(line("10", ok, t.elapsed(), &format!("orders 5..45: {}; others: {}", r.get("known-found").unwrap().detail, r.get("no-others").unwrap().detail)));
}

fn prop_ring() -> std::sync::Arc<Ring> {
    Ring::new(["x", "y", "z"])
}

fn prop_poly(ring: std::sync::Arc<Ring>, deg: u16, terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0..=deg, 3), -6i64..=6), 0..=terms)
        .prop_map(move |ts| MPoly::from_terms(&ring, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), Rational::from(c)))))
}

#[test]
fn criterion_11_properties() {
    let t = Instant::now();
    let mut runner = TestRunner::new(Config { cases: 64, failure_persistence: None, ..Config::default() });
    let r = prop_ring();
    let p = || prop_poly(r.clone(), 3, 5);
    let ring_laws = runner
        .run(&(p(), p(), p()), |(a, b, c)| {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            Ok(())
        })
        .is_ok();
    let gb = runner
        .run(&prop::collection::vec(prop_poly(r.clone(), 2, 3), 1..=3), |gens| {
            let f = PolySet::from_polys(&r, gens);
            let order = MonomialOrder::grevlex(3);
            if let Ok(g) = buchberger_with(&f, &order, &GbConfig { max_degree: 12, max_terms: 5_000, max_pairs: Some(2_000) }) {
                let basis = g.to_polyset();
                for (i, a) in g.polys().iter().enumerate() {
                    for b in &g.polys()[i + 1..] {
                        prop_assert!(normal_form(&s_polynomial(a, b, &order), &basis, &order).unwrap().is_zero());
                    }
                }
            }
            Ok(())
        })
        .is_ok();
    let ch = runner
        .run(&prop::collection::vec(prop::collection::vec(-9i64..=9, 5), 5), |m| {
            prop_assert!(eval_at_matrix(&charpoly(&m), &m).iter().flatten().all(|x| *x == 0));
            Ok(())
        })
        .is_ok();
    let mut fixtures = vec![n35(), n249()];
    fixtures.extend(run_search(&four_a1_family_config(40, 0)).unwrap().instances);
    let tmpl = build_template_with(5, InvolutionType::A52, Assumption::Pseudocyclic, &TemplateOptions::new(DegreeSymbols::Single)).unwrap();
    fixtures.push(Instance::new(tmpl.instantiate(&A52_POINT_29.map(Integer::from)).unwrap()).unwrap());
    let cfg = SpectraConfig::default();
    let (mut tri, mut pq, mut canon) = (true, true, true);
    for inst in &fixtures {
        let sd = spectral_data(inst, &cfg).unwrap();
        for (j, exact) in triangle_counts(inst).iter().enumerate() {
            let num = rug::Complex::with_val(sd.precision, sd.power_trace(j, 3) * inst.order) / 6u32;
            let d = rug::Float::with_val(sd.precision, num.real() - exact);
            tri &= d.to_f64().abs() < 1e-30 && num.imag().to_f64().abs() < 1e-30;
        }
        pq &= sd.pq_residual() < cfg.eps && sd.orthogonality_residual() < cfg.eps;
        let c = canonical_form(inst);
        canon &= canonical_form(&c) == c;
        for perm in star_compatible_perms(&inst.star, &inst.star) {
            canon &= canonical_form(&inst.permuted(&perm)) == c;
        }
    }
    let ok = ring_laws && gb && ch && tri && pq && canon;
    let detail = format!("ring laws {ring_laws}, S-pairs {gb}, Cayley-Hamilton {ch}, triangles {tri}, PQ=nI {pq}, canonical form {canon} on {} fixtures", fixtures.len());
    assert!(line("11", ok, t.elapsed(), &detail));
}
