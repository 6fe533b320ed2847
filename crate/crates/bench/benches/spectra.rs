use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gdspread::bounds::{evaluate_all, DEFAULT_TOL};
use gdspread::{distance_profile, generalized_distance_matrix, random_connected_graph, sym_eigen, sweep};

fn eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("sym_eigen");
    for n in [8, 16, 32, 64] {
        let g = random_connected_graph(n, 0.3, n as u64).unwrap();
        let m = generalized_distance_matrix(&distance_profile(&g).unwrap(), 0.5).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| sym_eigen(black_box(m), 1e-12).unwrap())
        });
    }
    group.finish();
}

fn profiles(c: &mut Criterion) {
    let mut group = c.benchmark_group("distance_profile");
    for n in [16, 64, 128] {
        let g = random_connected_graph(n, 0.1, 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| distance_profile(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn bound_registry(c: &mut Criterion) {
    let g = random_connected_graph(12, 0.5, 42).unwrap();
    c.bench_function("evaluate_all/n12", |b| {
        b.iter(|| evaluate_all(black_box(&g), 0.75, DEFAULT_TOL).unwrap())
    });
    let corpus: Vec<_> = (0..20).map(|s| random_connected_graph(8, 0.5, s).unwrap()).collect();
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("20x8_grid7", |b| {
        b.iter(|| sweep(black_box(&corpus), &[0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0], DEFAULT_TOL).unwrap())
    });
    group.finish();
}

criterion_group!(benches, eigensolver, profiles, bound_registry);
criterion_main!(benches);
