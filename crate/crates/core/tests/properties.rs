use proptest::prelude::*;
use rug::{Integer, Rational};
use sitawim::exactpoly::{buchberger_with, normal_form, s_polynomial, GbConfig, MPoly, Monomial, MonomialOrder, PolySet, Ring};
use sitawim::feasibility::triangle_counts;
use sitawim::solver::run_search;
use sitawim::spectra::{spectral_data, SpectraConfig};
use sitawim::structcheck::{canonical_form, charpoly, eval_at_matrix, star_compatible_perms, Instance};
use sitawim::workbench::fixtures::{n249, n35};
use sitawim::workbench::repro::{four_a1_family_config, A52_POINT_29};
use sitawim::varietygen::{build_template, Assumption, InvolutionType};
use std::sync::{Arc, OnceLock};

fn ring() -> Arc<Ring> {
    static R: OnceLock<Arc<Ring>> = OnceLock::new();
    R.get_or_init(|| Ring::new(["x", "y", "z"])).clone()
}

fn poly(max_deg: u16, max_terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, 3), -6i64..=6, 1i64..=3), 0..=max_terms).prop_map(|terms| {
        MPoly::from_terms(&ring(), terms.into_iter().map(|(e, n, d)| (Monomial::from_exponents(&e), Rational::from((n, d)))))
    })
}

fn orders() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![Just(MonomialOrder::grevlex(3)), Just(MonomialOrder::lex(3))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_laws(a in poly(3, 5), b in poly(3, 5), c in poly(3, 5)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MPoly::one(&ring()), a.clone());
        prop_assert_eq!(a.pow(2), &a * &a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(3, 5), b in poly(3, 5), pt in prop::collection::vec(-4i64..=4, 3)) {
        let v: Vec<Rational> = pt.iter().map(|&x| Rational::from(x)).collect();
        prop_assert_eq!((&a * &b).eval(&v), a.eval(&v) * b.eval(&v));
        prop_assert_eq!((&a + &b).eval(&v), a.eval(&v) + b.eval(&v));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn groebner_s_pairs_reduce_to_zero(gens in prop::collection::vec(poly(2, 3), 1..=3), order in orders()) {
        let f = PolySet::from_polys(&ring(), gens.clone());
        prop_assume!(!f.is_empty());
        let cfg = GbConfig { max_degree: 12, max_terms: 5_000, max_pairs: Some(2_000) };
        if let Ok(g) = buchberger_with(&f, &order, &cfg) {
            let basis = g.to_polyset();
            for (i, p) in g.polys().iter().enumerate() {
                for q in &g.polys()[i + 1..] {
                    let s = s_polynomial(p, q, &order);
                    prop_assert!(normal_form(&s, &basis, &order).unwrap().is_zero());
                }
            }
            for p in f.polys() {
                prop_assert!(g.normal_form(p).is_zero(), "generator {} does not reduce to zero", p);
            }
        }
    }

    #[test]
    fn cayley_hamilton(m in prop::collection::vec(prop::collection::vec(-9i64..=9, 5), 5)) {
        let p = charpoly(&m);
        prop_assert_eq!(p.degree(), 5);
        let z = eval_at_matrix(&p, &m);
        prop_assert!(z.iter().flatten().all(|x| *x == 0));
    }
}

/// Transcribed instances, the pseudocyclic 4A1 family and the order-29
/// 5A2 scheme.
fn fixtures() -> &'static [Instance] {
    static F: OnceLock<Vec<Instance>> = OnceLock::new();
    F.get_or_init(|| {
        let mut v = vec![n35(), n249()];
        v.extend(run_search(&four_a1_family_config(40, 0)).unwrap().instances.into_iter().filter(|i| i.order > 4));
        let t = build_template(5, InvolutionType::A52, Assumption::Pseudocyclic).unwrap();
        let vals: Vec<Integer> = A52_POINT_29.iter().map(|&x| Integer::from(x)).collect();
        v.push(Instance::new(t.instantiate(&vals).unwrap()).unwrap());
        v
    })
}

#[test]
fn triangle_counts_exact_and_numeric_agree() {
    for inst in fixtures() {
        let sd = spectral_data(inst, &SpectraConfig::default()).unwrap();
        for (j, exact) in triangle_counts(inst).iter().enumerate() {
            let numeric: rug::Complex = sd.power_trace(j, 3) * inst.order / 6u32;
            let diff = rug::Float::with_val(sd.precision, numeric.real() - exact);
            let err = diff.to_f64().abs() + numeric.imag().to_f64().abs();
            assert!(err < 1e-30 * (1.0 + exact.to_f64().abs()), "order {} b{j}: {exact} vs {}", inst.order, numeric.real());
        }
    }
}

#[test]
fn eigenmatrices_are_dual_and_orthogonal() {
    for inst in fixtures() {
        let cfg = SpectraConfig::default();
        let sd = spectral_data(inst, &cfg).unwrap();
        assert!(sd.pq_residual() < cfg.eps, "order {}: {}", inst.order, sd.pq_residual());
        assert!(sd.orthogonality_residual() < cfg.eps, "order {}: {}", inst.order, sd.orthogonality_residual());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_idempotent_and_invariant(which in 0usize..6, pick in any::<prop::sample::Index>()) {
        let all = fixtures();
        let inst = &all[which % all.len()];
        let perms = star_compatible_perms(&inst.star, &inst.star);
        let p = pick.get(&perms);
        let c = canonical_form(inst);
        prop_assert_eq!(&canonical_form(&c), &c);
        prop_assert_eq!(&canonical_form(&inst.permuted(p)), &c);
    }
}
