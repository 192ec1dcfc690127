use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use airyqc_core::poly::omega::{big_omega_recursive_table, omega_recursive_table};
use airyqc_core::{correlator_shell, eo_table, Branch, WkbSeries};

fn correlators(c: &mut Criterion) {
    let mut group = c.benchmark_group("correlator_shell");
    for chi in [4u32, 6, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(chi), &chi, |b, &chi| {
            b.iter(|| correlator_shell(chi))
        });
    }
    group.finish();
}

fn residues(c: &mut Criterion) {
    let mut group = c.benchmark_group("eo_table");
    group.sample_size(10);
    for chi in [4u32, 6] {
        group.bench_with_input(BenchmarkId::new("serial", chi), &chi, |b, &chi| {
            b.iter(|| eo_table(chi, 1).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("jobs4", chi), &chi, |b, &chi| {
            b.iter(|| eo_table(chi, 4).unwrap())
        });
    }
    group.finish();
}

fn polynomial_recursions(c: &mut Criterion) {
    c.bench_function("omega_recursive_table/6", |b| b.iter(|| omega_recursive_table(6).unwrap()));
    c.bench_function("big_omega_recursive_table/6", |b| {
        b.iter(|| big_omega_recursive_table(6).unwrap())
    });
}

fn quantum_curve(c: &mut Criterion) {
    let mut group = c.benchmark_group("wkb");
    group.sample_size(10);
    group.bench_function("series/10", |b| b.iter(|| WkbSeries::standard(10, Branch::Plus).unwrap()));
    let s = WkbSeries::standard(10, Branch::Plus).unwrap();
    group.bench_function("residuals/3..10", |b| {
        b.iter(|| (3..=10).all(|n| s.w_order_residual(n).is_zero()))
    });
    group.finish();
}

criterion_group!(benches, correlators, residues, polynomial_recursions, quantum_curve);
criterion_main!(benches);
