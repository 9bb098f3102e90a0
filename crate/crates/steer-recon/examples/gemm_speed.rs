use steer_recon::gemm::{gemm_with, gemm_with_seq, SliceRows};

fn bench(label: &str, m: usize, k: usize, n: usize, seq: bool) {
    let a: Vec<f64> = (0..m * k).map(|i| (i % 97) as f64 * 0.01).collect();
    let b: Vec<f64> = (0..k * n).map(|i| (i % 89) as f64 * 0.01).collect();
    let mut c = vec![0.0; m * n];
    let src = SliceRows { b: &b, n };
    for _ in 0..3 {
        if seq { gemm_with_seq(m, k, n, &a, &src, &mut c, false) } else { gemm_with(m, k, n, &a, &src, &mut c, false) }
    }
    let reps = 40;
    let t0 = std::time::Instant::now();
    for _ in 0..reps {
        if seq { gemm_with_seq(m, k, n, &a, &src, &mut c, false) } else { gemm_with(m, k, n, &a, &src, &mut c, false) }
    }
    let dt = t0.elapsed().as_secs_f64();
    let gf = (2.0 * (m * k * n) as f64 * reps as f64) / dt / 1e9;
    println!("{label}: {:.1} GFLOP/s ({:.2} ms/call)", gf, dt / reps as f64 * 1e3);
}

fn main() {
    bench("fwd  par", 64, 576, 4096, false);
    bench("fwd  seq", 64, 576, 4096, true);
    bench("bwdk par", 576, 4096, 64, false);
    bench("bwdk seq", 576, 4096, 64, true);
    bench("l1   par", 64, 9, 4096, false);
}
