use sitawim::exactpoly::{linear_reduce_with, parse_poly, LinearReduceOptions, PolySet};
use sitawim::varietygen::*;

fn homogeneous_4a1() -> Template {
    build_template_with(4, InvolutionType::A41, Assumption::Pseudocyclic, &TemplateOptions::new(DegreeSymbols::Homogeneous)).unwrap()
}

#[test]
fn full_system_has_sixteen_polynomials() {
    let t = build_template(4, InvolutionType::A41, Assumption::None).unwrap();
    let s = emit_structure_polys(&t);
    for (p, tag) in s.iter() {
        println!("{tag}: {p}");
    }
    assert_eq!(s.len(), 16);
}

#[test]
fn pseudocyclic_reduces_to_one_polynomial() {
    let t = homogeneous_4a1();
    let mut s = emit_structure_polys(&t);
    s.extend(&trace_constraints(&t, &TraceSource::Pseudocyclic).unwrap());
    s.extend(&t.side);
    let x5 = t.ring.index_of("x5").unwrap();
    let k1 = t.ring.index_of("k1").unwrap();
    let red = linear_reduce_with(&s, &t.positives(), &LinearReduceOptions { keep: vec![x5, k1], max_steps: None }).unwrap();
    for sub in &red.substitutions {
        println!("{} := {}   [{}]", t.ring.name(sub.var), sub.expr, sub.source);
    }
    for (v, e) in red.resolved() {
        println!("{} = {}", t.ring.name(v), e);
    }
    assert_eq!(red.remaining.len(), 1, "{:?}", red.remaining.polys());
    let f = parse_poly(&t.ring, "36*x5^2-24*x5*k1+4*k1^2+32*x5-11*k1+7").unwrap();
    let want = PolySet::from_polys(&t.ring, [f]);
    assert!(red.remaining.same_elements(&want));
}
