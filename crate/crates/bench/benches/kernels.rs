use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qwalk_bench::{dense_matrix_series, dense_series};
use qwalk_core::coins;
use qwalk_core::genfun::{gamma_bar_direct, GammaBarMode};
use qwalk_core::sojourn::{gamma_table, psi_aggregate, SojournConvention};
use qwalk_core::spectral::flatness_scan;
use qwalk_core::walk::{evolve_xi, WalkConfig};
use qwalk_core::{Complex64, ExactComplex, Vec2};

fn walk(c: &mut Criterion) {
    let exact = WalkConfig::new(
        coins::hadamard::<ExactComplex>(),
        Vec2::default_initial(),
        100,
    )
    .unwrap();
    c.bench_function("evolve_xi hadamard exact 100", |b| {
        b.iter(|| evolve_xi(black_box(&exact)).unwrap())
    });
    let float = WalkConfig::new(
        coins::hadamard::<Complex64>(),
        Vec2::default_initial(),
        1000,
    )
    .unwrap();
    c.bench_function("evolve_xi hadamard float 1000", |b| {
        b.iter(|| evolve_xi(black_box(&float)).unwrap())
    });
}

fn sojourn(c: &mut Criterion) {
    let mut g = c.benchmark_group("sojourn");
    g.sample_size(10);
    let h = coins::hadamard::<Complex64>();
    g.bench_function("gamma_table float 200", |b| {
        b.iter(|| gamma_table(black_box(&h), 200, SojournConvention::Midpoint).unwrap())
    });
    g.bench_function("psi_aggregate float 100", |b| {
        b.iter(|| {
            psi_aggregate(
                black_box(&h),
                0,
                100,
                SojournConvention::Midpoint,
                usize::MAX,
            )
            .unwrap()
        })
    });
    let e = coins::hadamard::<ExactComplex>();
    g.bench_function("gamma_table exact 40", |b| {
        b.iter(|| gamma_table(black_box(&e), 40, SojournConvention::Midpoint).unwrap())
    });
    g.finish();
}

fn series(c: &mut Criterion) {
    let a = dense_series(60, 60);
    c.bench_function("series mul scalar 60x60", |b| {
        b.iter(|| black_box(&a).mul(black_box(&a)))
    });
    let m = dense_matrix_series::<Complex64>(30, 30);
    c.bench_function("series mul matrix 30x30", |b| {
        b.iter(|| black_box(&m).mul(black_box(&m)))
    });
    let gamma = gamma_table(
        &coins::hadamard::<Complex64>(),
        100,
        SojournConvention::Midpoint,
    )
    .unwrap();
    c.bench_function("gamma_bar_direct float 100", |b| {
        b.iter(|| {
            gamma_bar_direct(
                black_box(&gamma),
                100,
                100,
                GammaBarMode::IncludeZeroSojourn,
            )
            .unwrap()
        })
    });
}

fn spectral(c: &mut Criterion) {
    let h = coins::hadamard::<Complex64>();
    c.bench_function("flatness_scan 1024", |b| {
        b.iter(|| flatness_scan(black_box(&h), 1024).unwrap())
    });
}

criterion_group!(benches, walk, sojourn, series, spectral);
criterion_main!(benches);
