use std::hint::black_box;

use cantor_bench::{composite, inputs};
use cantor_core::{
    build_a, build_b, candidate, decide_injective, enumerate_and_decide, Property, StateId,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn compose(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose");
    for (n, m) in [(3, 2), (8, 5), (16, 12)] {
        let (a, b) = (build_a(n).unwrap(), build_b(m).unwrap());
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{n}x{m}")),
            &(a, b),
            |bench, (a, b)| bench.iter(|| a.compose(black_box(b)).unwrap()),
        );
    }
    group.finish();
}

fn omega_exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_omega_exact");
    for (n, m) in [(3, 2), (6, 4), (12, 5)] {
        let f = composite(n, m);
        let words = inputs(n, 64, 7);
        group.bench_function(format!("{n}x{m}"), |bench| {
            bench.iter(|| {
                for w in &words {
                    black_box(f.run_omega_exact(StateId(0), w).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn injectivity(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide_injective");
    for (x, y, k, index) in [(2, 2, 2, 137), (3, 3, 3, 250_001), (3, 2, 4, 9_999_999)] {
        let a = candidate(x, y, k, index).unwrap();
        group.bench_function(format!("x{x}y{y}q{k}"), |bench| {
            bench.iter(|| decide_injective(black_box(&a), StateId(0)).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_and_decide");
    group.sample_size(10);
    group.bench_function("x3y2q2-injective", |bench| {
        bench.iter(|| enumerate_and_decide(3, 2, 2, Property::Injective).unwrap())
    });
    group.bench_function("x2y3q2-surjective", |bench| {
        bench.iter(|| enumerate_and_decide(2, 3, 2, Property::Surjective).unwrap())
    });
    group.finish();
}

criterion_group!(benches, compose, omega_exact, injectivity, enumeration);
criterion_main!(benches);
