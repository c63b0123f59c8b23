use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use onsager_bench::{model, params};
use onsager_core::linalg::rref;
use onsager_core::lusztig::build_h;
use onsager_core::model::{build_model, solve_phi};
use onsager_core::splitmaps::SplitMaps;
use onsager_core::verify::{verify_model, Suite};
use onsager_core::Scalar;

fn construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_model");
    for d in 1..=3 {
        let p = params(d);
        g.bench_with_input(BenchmarkId::from_parameter(d), &p, |b, p| {
            b.iter(|| build_model(p).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("solve_phi");
    g.sample_size(10);
    let (q, a, b) = (Scalar::from_int(2), Scalar::from_int(3), Scalar::from_int(5));
    for d in 1..=3 {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |bn, &d| {
            bn.iter(|| solve_phi(d, &q, &a, &b).unwrap())
        });
    }
    g.finish();
}

fn structures(c: &mut Criterion) {
    let m = model(3);
    c.bench_function("build_h/d3", |b| b.iter(|| build_h(&m).unwrap()));
    c.bench_function("split_maps/d3", |b| b.iter(|| SplitMaps::build(&m).unwrap()));
    let h = build_h(&m).unwrap().h;
    c.bench_function("inverse/4x4", |b| b.iter(|| h.inverse().unwrap()));
    c.bench_function("rref/4x4", |b| b.iter(|| rref(&h)));
}

fn full_suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_model");
    g.sample_size(10);
    for d in 1..=3 {
        let m = model(d);
        g.bench_with_input(BenchmarkId::from_parameter(d), &m, |b, m| {
            b.iter(|| verify_model(m, &Suite::ALL))
        });
    }
    g.finish();
}

criterion_group!(benches, construction, structures, full_suite);
criterion_main!(benches);
