use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hecke_bench::{generic_algebra, minus_half, prefix_sum};
use hecke_core::distinction::{distinction_integral, growth_bfs, poincare_value};
use hecke_core::spherical::verify_eigen_generator;
use hecke_core::weyl::enumerate_by_length;
use hecke_core::{LevelZeroParams, Rational, SphericalParams, Truncation};

fn hecke_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("hecke_product");
    for len in [2, 4, 6] {
        let alg = generic_algebra(3);
        let a = prefix_sum(3, len);
        let b = prefix_sum(3, len);
        group.bench_with_input(BenchmarkId::from_parameter(len), &len, |bench, _| {
            bench.iter(|| alg.product(black_box(&a), black_box(&b)).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_by_length");
    for (e, l) in [(3, 12), (4, 8), (5, 6)] {
        group.bench_with_input(BenchmarkId::new(format!("e{e}"), l), &l, |bench, &l| {
            bench.iter(|| enumerate_by_length(e, l).unwrap())
        });
    }
    group.finish();
}

fn eigen(c: &mut Criterion) {
    let p = SphericalParams::generic(3, Rational::from(1)).unwrap();
    c.bench_function("eigen_generator_e3_L8", |bench| {
        bench.iter(|| verify_eigen_generator(0, Truncation::new(8), &p).unwrap())
    });
}

fn series(c: &mut Criterion) {
    c.bench_function("growth_bfs_e4_L12", |bench| bench.iter(|| growth_bfs(4, 12).unwrap()));
    let x = minus_half();
    c.bench_function("poincare_value_e6", |bench| bench.iter(|| poincare_value(6, black_box(&x)).unwrap()));
    let p = LevelZeroParams::new(3, 1, 2).unwrap();
    c.bench_function("distinction_integral_e3_L20", |bench| {
        bench.iter(|| distinction_integral(&p, 20).unwrap())
    });
}

criterion_group!(benches, hecke_product, enumeration, eigen, series);
criterion_main!(benches);
