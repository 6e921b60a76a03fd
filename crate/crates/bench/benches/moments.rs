use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use poisson_moments::combinatorics::{bell_polynomial, enumerate_set_partitions};
use poisson_moments::moments::{count_integrand_exact, moment_random_rhs, skorohod_moment_rhs};
use poisson_moments::process::{FunctionalSpec, IntegrandSpec};
use poisson_moments_bench::{mc, split_integrand, split_space};
use std::hint::black_box;

fn partitions(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_set_partitions");
    for n in [6, 8, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_set_partitions(n).unwrap().count())
        });
    }
    group.finish();
}

fn bell(c: &mut Criterion) {
    c.bench_function("bell_polynomial(20)", |b| b.iter(|| bell_polynomial(black_box(20))));
}

fn count_exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_integrand_exact");
    for n in [3, 5, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| count_integrand_exact(n).unwrap())
        });
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("monte_carlo_rhs");
    group.sample_size(10);
    let space = split_space(2.0);
    let params = mc(10_000);
    group.bench_function("random n=3 count", |b| {
        b.iter(|| moment_random_rhs(&space, &IntegrandSpec::Count, &FunctionalSpec::One, 3, &params).unwrap())
    });
    let u = split_integrand();
    group.bench_function("skorohod n=3", |b| {
        b.iter(|| skorohod_moment_rhs(&space, &u, &FunctionalSpec::One, 3, &params).unwrap())
    });
    group.finish();
}

criterion_group!(benches, partitions, bell, count_exact, monte_carlo);
criterion_main!(benches);
