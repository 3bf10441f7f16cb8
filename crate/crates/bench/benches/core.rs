use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use klyshko::bellop::{bell_operator, ghz_optimal_settings, lhv_max, local_coefficients};
use klyshko::certify::estimate_e;
use klyshko::optimize::{max_violation_settings, OptConfig};
use klyshko::{PureState, Sign};

fn operator(c: &mut Criterion) {
    let mut g = c.benchmark_group("bell_operator");
    for n in [4, 6, 8] {
        let st = ghz_optimal_settings(n).unwrap().settings;
        g.bench_with_input(BenchmarkId::from_parameter(n), &st, |b, st| b.iter(|| bell_operator(black_box(st)).unwrap()));
    }
    g.finish();
}

fn coefficients(c: &mut Criterion) {
    let mut g = c.benchmark_group("local_coefficients");
    for n in [4, 8] {
        let psi = PureState::ghz(n, Sign::Plus).unwrap();
        let st = ghz_optimal_settings(n).unwrap().settings;
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| local_coefficients(black_box(&psi), &st, 0).unwrap())
        });
    }
    g.finish();
}

fn violation(c: &mut Criterion) {
    let mut g = c.benchmark_group("max_violation");
    g.sample_size(10);
    let cfg = OptConfig::new(4, 1e-10, 7);
    for n in [3, 5] {
        let psi = PureState::ghz(n, Sign::Plus).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &psi, |b, psi| {
            b.iter(|| max_violation_settings(black_box(psi), &cfg).unwrap())
        });
    }
    g.finish();
}

fn estimate(c: &mut Criterion) {
    let psi = PureState::ghz(4, Sign::Plus).unwrap();
    let st = ghz_optimal_settings(4).unwrap().settings;
    c.bench_function("estimate_e/4x10000", |b| b.iter(|| estimate_e(black_box(&psi), &st, 10_000, 3).unwrap()));
}

fn classical(c: &mut Criterion) {
    let mut g = c.benchmark_group("lhv_max");
    for n in [4, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| lhv_max(black_box(n)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, operator, coefficients, violation, estimate, classical);
criterion_main!(benches);
