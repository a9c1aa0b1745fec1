use criterion::{black_box, criterion_group, criterion_main, Criterion};
use sitawim::exactpoly::{buchberger_with, GbConfig, MonomialOrder};
use sitawim::feasibility::{feasibility, FeasConfig};
use sitawim::solver::{prepare_systems, solve_point};
use sitawim::spectra::{spectral_data, SpectraConfig};
use sitawim::structcheck::{canonical_form, charpoly};
use sitawim::workbench::fixtures::{n249, n35};
use sitawim::workbench::repro::{five_a1_reduction, n249_narrow_config};

fn charpolys(c: &mut Criterion) {
    let inst = n249();
    c.bench_function("charpoly_n249", |b| b.iter(|| inst.matrices.iter().map(|m| charpoly(black_box(m))).count()));
    c.bench_function("canonical_form_n249", |b| b.iter(|| canonical_form(black_box(&inst))));
}

fn groebner(c: &mut Criterion) {
    let (t, red) = five_a1_reduction().unwrap();
    let order = MonomialOrder::grevlex(t.ring.nvars());
    let cfg = GbConfig::default();
    let mut g = c.benchmark_group("groebner");
    g.sample_size(10);
    g.bench_function("grevlex_5a1_reduced", |b| b.iter(|| buchberger_with(black_box(&red.remaining), &order, &cfg).unwrap()));
    g.finish();
}

fn spectra(c: &mut Criterion) {
    let cfg = SpectraConfig::default();
    let (a, b) = (n35(), n249());
    c.bench_function("spectral_data_n35", |bch| bch.iter(|| spectral_data(black_box(&a), &cfg).unwrap()));
    c.bench_function("spectral_data_n249", |bch| bch.iter(|| spectral_data(black_box(&b), &cfg).unwrap()));
}

fn feas(c: &mut Criterion) {
    let cfg = FeasConfig::default();
    let inst = n249();
    let sd = spectral_data(&inst, &cfg.spectra).unwrap();
    let mut g = c.benchmark_group("feasibility");
    g.sample_size(10);
    g.bench_function("battery_n249", |b| b.iter(|| feasibility(black_box(&inst), &cfg, Some(&sd))));
    g.finish();
}

fn solve(c: &mut Criterion) {
    let cfg = n249_narrow_config(1);
    let sys = prepare_systems(&cfg).unwrap().remove(0);
    let point: Vec<(String, i64)> = [("m", 62), ("x22", 15), ("x23", 14), ("x24", 15)].iter().map(|(n, v)| (n.to_string(), *v)).collect();
    let mut g = c.benchmark_group("solve_point");
    g.sample_size(10);
    g.bench_function("n249_point", |b| b.iter(|| solve_point(black_box(&sys), &point, &cfg.gb, false)));
    g.finish();
}

criterion_group!(benches, charpolys, groebner, spectra, feas, solve);
criterion_main!(benches);
