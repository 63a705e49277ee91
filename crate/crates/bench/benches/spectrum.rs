use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qes_bench::{benchmark_channel, benchmark_config};
use qes_core::{coefficients, default_r_max, energy_roots_general, spectrum, HeunParams, RadialGrid};

fn heun_coefficients(c: &mut Criterion) {
    let p = HeunParams::new(0.7, 1.3, 0.4, 0.2).unwrap();
    let mut group = c.benchmark_group("heun_coefficients");
    for k in [16, 128, 600] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| coefficients(black_box(p), k).unwrap())
        });
    }
    group.finish();
}

fn energy_roots(c: &mut Criterion) {
    let cfg = benchmark_config();
    let mut group = c.benchmark_group("energy_roots_general");
    for n in [1, 2, 4, 8] {
        let ch = benchmark_channel(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &ch, |b, ch| {
            b.iter(|| energy_roots_general(black_box(&cfg), ch).unwrap())
        });
    }
    group.finish();
}

fn oracle_spectrum(c: &mut Criterion) {
    let cfg = benchmark_config();
    let sol = energy_roots_general(&cfg, &benchmark_channel(1)).unwrap();
    let b_top = 2.0 * sol.config.mass * sol.energy_roots[1];
    let grid = RadialGrid::new(default_r_max(&sol.config, 0.0, b_top).unwrap(), 4000).unwrap();
    c.bench_function("oracle_spectrum_n4000", |b| {
        b.iter(|| spectrum(black_box(&sol.config), 0.0, 0.0, 2, &grid).unwrap())
    });
}

criterion_group!(benches, heun_coefficients, energy_roots, oracle_spectrum);
criterion_main!(benches);
