//! Compare the rayon-backed enumeration loops against the sequential
//! reference path. Build with `--no-default-features` to benchmark the fully
//! sequential crate.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use motzeta::jets;
use motzeta::poly::SparsePoly;

fn bench_jet_count(c: &mut Criterion) {
    let g = SparsePoly::parse("x^2 + y^3", &["x", "y"]).unwrap();
    let mut group = c.benchmark_group("jet_count");
    for (n, q) in [(3u32, 3u64), (3, 5), (4, 3)] {
        group.bench_with_input(
            BenchmarkId::new("default", format!("n{n}_q{q}")),
            &(n, q),
            |b, &(n, q)| b.iter(|| jets::jet_count(&g, n, q).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("serial", format!("n{n}_q{q}")),
            &(n, q),
            |b, &(n, q)| b.iter(|| jets::jet_count_serial(&g, n, q).unwrap()),
        );
    }
    group.finish();
}

fn bench_multi_jet(c: &mut Criterion) {
    let fs = [
        SparsePoly::parse("x^2", &["x", "y"]).unwrap(),
        SparsePoly::parse("y^3", &["x", "y"]).unwrap(),
    ];
    c.bench_function("multi_jet_n11_q3", |b| {
        b.iter(|| jets::multi_jet_count(&fs, &[2, 3], 3).unwrap())
    });
}

fn bench_nondeg_probe(c: &mut Criterion) {
    let p = SparsePoly::parse(
        "x^3 + x*y*z + y^3 + z^3 + x^2*y*z^2",
        &["x", "y", "z"],
    )
    .unwrap();
    c.bench_function("nondeg_probe_p3", |b| {
        b.iter(|| motzeta::nondeg::probe(&p, motzeta::nondeg::Predicate::Strong))
    });
}

criterion_group!(benches, bench_jet_count, bench_multi_jet, bench_nondeg_probe);
criterion_main!(benches);
