//! One worker versus the default pool on the data-parallel kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hermitian_lfun::characters::{unit_group, RationalCharacter};
use hermitian_lfun::series::from_euler;
use hermitian_lfun::series::{dedekind_lattice, l_series, TruncatedSeries};
use hermitian_lfun::verify::{verify_all, zeta_k_factor_map, TwoAdicReading, VerifyOptions};
use hermitian_lfun::Cyclo;
use num_complex::Complex64;
use rayon::ThreadPool;

fn pools() -> Vec<(String, ThreadPool)> {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    let n = default.current_num_threads();
    vec![
        ("1 thread".into(), single),
        (format!("default pool ({n})"), default),
    ]
}

fn kernels(c: &mut Criterion) {
    let pools = pools();
    let chi = unit_group(5).unwrap().characters()[3].clone();
    let omega = chi.mul(&chi.bar_twist()).unwrap();

    let mut g = c.benchmark_group("convolve_200k");
    let zeta = TruncatedSeries::<Complex64>::zeta(200_000);
    let theta: TruncatedSeries<Complex64> = l_series(&RationalCharacter::theta(), 200_000);
    for (name, pool) in &pools {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| black_box(zeta.convolve(&theta).unwrap())))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("lattice_100k");
    for (name, pool) in &pools {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                pool.install(|| black_box(dedekind_lattice::<Complex64>(&omega, 100_000).unwrap()))
            })
        });
    }
    g.finish();

    let mut g = c.benchmark_group("euler_exact_5k");
    g.sample_size(10);
    let map = zeta_k_factor_map(&chi, 5000, TwoAdicReading::Corrected);
    for (name, pool) in &pools {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| black_box(from_euler::<Cyclo>(&map, 5000).unwrap())))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("verify_all_mod5");
    g.sample_size(10);
    let options = VerifyOptions::default();
    for (name, pool) in &pools {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                pool.install(|| {
                    black_box(verify_all(5, 1000, &[3, 4], &[2, 3, 5], &options).unwrap())
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
