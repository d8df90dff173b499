use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dimerlab::kasteleyn::{calibrate_signs, kasteleyn_signs, partition_toroidal};
use dimerlab::mahler::mahler_2d;
use dimerlab::oracle::DEFAULT_DIMER_CAP;
use dimerlab::torus::{builtin, patch};
use dimerlab::treecount::{density_sweep, log_tree_count, DEFAULT_EXACT_CAP};

fn char_poly(c: &mut Criterion) {
    for name in ["weave", "triaxial"] {
        let b = builtin(name).unwrap().overlay();
        c.bench_with_input(BenchmarkId::new("char_poly", name), &b, |bench, b| {
            bench.iter(|| kasteleyn_signs(b).unwrap().char_poly().unwrap())
        });
    }
}

fn mahler(c: &mut Criterion) {
    let mut group = c.benchmark_group("mahler_2d");
    for name in ["weave", "triaxial"] {
        let p = kasteleyn_signs(&builtin(name).unwrap().overlay()).unwrap().char_poly().unwrap();
        for tol in [1e-6, 1e-9] {
            group.bench_with_input(BenchmarkId::new(name, tol), &p, |bench, p| {
                bench.iter(|| mahler_2d(black_box(p), tol).unwrap())
            });
        }
    }
    group.finish();
}

fn partition(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition_toroidal");
    group.sample_size(10);
    let k = kasteleyn_signs(&builtin("weave").unwrap().overlay()).unwrap();
    let cal = calibrate_signs(&k, DEFAULT_DIMER_CAP).unwrap();
    for n in [8, 16, 32] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, &n| {
            bench.iter(|| partition_toroidal(&k, &cal, n).unwrap())
        });
    }
    group.finish();
}

fn tree_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("log_tree_count");
    group.sample_size(10);
    let g = builtin("weave").unwrap();
    for n in [25, 50, 100] {
        let h = patch(&g, n).plane().graph();
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |bench, h| {
            bench.iter(|| log_tree_count(h).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("density_sweep");
    group.sample_size(10);
    let tri = builtin("triaxial").unwrap();
    group.bench_function("triaxial_10_20_40", |bench| {
        bench.iter(|| density_sweep(&tri, &[10, 20, 40], DEFAULT_EXACT_CAP).unwrap())
    });
    group.finish();
}

criterion_group!(benches, char_poly, mahler, partition, tree_counts);
criterion_main!(benches);
