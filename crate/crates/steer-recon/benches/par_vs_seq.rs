//! Criterion comparison of the rayon and sequential execution paths.

use criterion::{criterion_group, criterion_main, Criterion};

fn bench_gemm(c: &mut Criterion) {
    let (m, k, n) = (64usize, 576usize, 4096usize);
    let a: Vec<f64> = (0..m * k).map(|i| (i % 97) as f64 * 0.01).collect();
    let b: Vec<f64> = (0..k * n).map(|i| (i % 89) as f64 * 0.01).collect();
    let mut out = vec![0.0; m * n];

    let mut g = c.benchmark_group("gemm_64x576x4096");
    g.bench_function("parallel", |bn| {
        bn.iter(|| steer_recon::gemm::gemm_with(m, k, n, &a, |r, col| b[r * n + col], &mut out, false))
    });
    g.bench_function("sequential", |bn| {
        bn.iter(|| steer_recon::gemm::gemm_with_seq(m, k, n, &a, |r, col| b[r * n + col], &mut out, false))
    });
    g.finish();
}

criterion_group!(benches, bench_gemm);
criterion_main!(benches);
