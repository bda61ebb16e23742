use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use fcstat_bench::{anderson, xy_lattice};
use fcstat_core::bounds::{compute_r, Regularity};
use fcstat_core::fcs::{FcsEngine, FcsTolerances};
use fcstat_core::linalg::random::{random_hermitian, seeded_rng};
use fcstat_core::linalg::{eigh, op_norm};
use fcstat_core::DensityMatrix;

fn linalg(c: &mut Criterion) {
    let mut group = c.benchmark_group("linalg");
    for n in [16, 64, 256] {
        let a = random_hermitian(&mut seeded_rng(n as u64), n, 1.0);
        group.bench_with_input(BenchmarkId::new("eigh", n), &a, |b, a| {
            b.iter(|| eigh(black_box(a)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("op_norm", n), &a, |b, a| {
            b.iter(|| op_norm(black_box(a.matrix())).unwrap())
        });
    }
    group.finish();
}

fn fcs(c: &mut Criterion) {
    let mut group = c.benchmark_group("fcs");
    for (label, system) in [("xy_l1", xy_lattice(1)), ("anderson_l1", anderson(1))] {
        let rho = DensityMatrix::maximally_mixed(system.dim());
        group.bench_function(BenchmarkId::new("engine_setup", label), |b| {
            b.iter(|| FcsEngine::new(black_box(&system), &rho, FcsTolerances::default()).unwrap())
        });
        let engine = FcsEngine::new(&system, &rho, FcsTolerances::default()).unwrap();
        group.bench_function(BenchmarkId::new("distribution", label), |b| {
            b.iter(|| engine.distribution(black_box(10.0)).unwrap())
        });
    }
    group.finish();
}

fn regularity(c: &mut Criterion) {
    let mut group = c.benchmark_group("regularity");
    group.sample_size(10);
    for (label, system) in [("xy_l1", xy_lattice(1)), ("anderson_l1", anderson(1))] {
        group.bench_function(BenchmarkId::new("compute_r_101", label), |b| {
            b.iter(|| compute_r(black_box(&system), 0.5, 101).unwrap())
        });
        let reg = Regularity::new(&system).unwrap();
        group.bench_function(BenchmarkId::new("conjugated_norm", label), |b| {
            b.iter(|| reg.conjugated_norm(black_box(0.25)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, linalg, fcs, regularity);
criterion_main!(benches);
