//! Blocked f64 matrix multiply: `C = A * B` (optionally `C += A * B`).
//!
//! `A` is a materialized row-major slice; `B` is supplied through a row
//! filler so callers can fuse im2col patch extraction, transposes, and
//! kernel flips into the packing step without materializing the operand.
//!
//! Panels of `B` are packed into NR-wide tiles and `A` into MR-tall tiles so
//! the microkernel streams both operands linearly. Work is split over
//! disjoint (row-chunk, column-panel) blocks of `C`; each output element is
//! accumulated by exactly one task in a fixed k-order, so the parallel and
//! sequential paths agree bitwise.

const MR: usize = 4;
const NR: usize = 16;
const KC: usize = 320;
const NC: usize = 256;

/// Fills `dst` with `B[k, j0 .. j0 + dst.len()]`.
pub trait RowFill: Sync {
    fn fill(&self, k: usize, j0: usize, dst: &mut [f64]);
}

impl<F: Fn(usize, usize, &mut [f64]) + Sync> RowFill for F {
    fn fill(&self, k: usize, j0: usize, dst: &mut [f64]) {
        self(k, j0, dst)
    }
}

/// Adapter for a materialized row-major `[k x n]` slice.
pub struct SliceRows<'a> {
    pub b: &'a [f64],
    pub n: usize,
}

impl RowFill for SliceRows<'_> {
    fn fill(&self, k: usize, j0: usize, dst: &mut [f64]) {
        dst.copy_from_slice(&self.b[k * self.n + j0..k * self.n + j0 + dst.len()]);
    }
}

/// `C = A*B` with `A: [m x k]` and `B: [k x n]` supplied by `bsrc`.
pub fn gemm_with<B: RowFill>(m: usize, k: usize, n: usize, a: &[f64], bsrc: &B, c: &mut [f64], accumulate: bool) {
    gemm_impl(true, m, k, n, a, bsrc, c, accumulate);
}

/// Sequential variant of [`gemm_with`], kept callable for benchmarks.
pub fn gemm_with_seq<B: RowFill>(
    m: usize,
    k: usize,
    n: usize,
    a: &[f64],
    bsrc: &B,
    c: &mut [f64],
    accumulate: bool,
) {
    gemm_impl(false, m, k, n, a, bsrc, c, accumulate);
}

/// Plain slice-backed `C = A*B` for small dense products.
pub fn gemm_slices(m: usize, k: usize, n: usize, a: &[f64], b: &[f64], c: &mut [f64]) {
    assert_eq!(b.len(), k * n);
    gemm_with(m, k, n, a, &SliceRows { b, n }, c, false);
}

struct SendMut(*mut f64);
unsafe impl Send for SendMut {}
unsafe impl Sync for SendMut {}

impl SendMut {
    fn get(&self) -> *mut f64 {
        self.0
    }
}

#[allow(clippy::too_many_arguments)]
fn gemm_impl<B: RowFill>(
    par: bool,
    m: usize,
    k: usize,
    n: usize,
    a: &[f64],
    bsrc: &B,
    c: &mut [f64],
    accumulate: bool,
) {
    assert_eq!(a.len(), m * k, "A shape mismatch");
    assert_eq!(c.len(), m * n, "C shape mismatch");
    if m == 0 || n == 0 {
        return;
    }
    if k == 0 {
        if !accumulate {
            c.fill(0.0);
        }
        return;
    }

    let m_tiles = m.div_ceil(MR);
    let jc_blocks = n.div_ceil(NC);
    let threads = if par { current_threads() } else { 1 };

    // Column panels alone keep the pool busy on wide outputs; narrow outputs
    // additionally split the row range, with panels packed once and shared.
    let m_chunk_tiles = if jc_blocks >= 2 * threads || threads == 1 {
        m_tiles
    } else {
        m_tiles.div_ceil((2 * threads).div_ceil(jc_blocks))
    };
    let m_chunks = m_tiles.div_ceil(m_chunk_tiles);

    let cptr = SendMut(c.as_mut_ptr());
    let mut kc0 = 0;
    while kc0 < k {
        let kc_len = KC.min(k - kc0);
        let a_pack = pack_a(a, m, k, kc0, kc_len);
        let first = kc0 == 0 && !accumulate;

        let kernel_block = |panel: &[f64], jc: usize, tile_lo: usize, tile_hi: usize| {
            let jc0 = jc * NC;
            let nc_len = NC.min(n - jc0);
            let n_tiles = nc_len.div_ceil(NR);
            for mt in tile_lo..tile_hi {
                let a_tile = &a_pack[mt * kc_len * MR..(mt + 1) * kc_len * MR];
                let mr_len = MR.min(m - mt * MR);
                for jt in 0..n_tiles {
                    let b_tile = &panel[jt * kc_len * NR..(jt + 1) * kc_len * NR];
                    let nr_len = NR.min(nc_len - jt * NR);
                    let c_off = (mt * MR) * n + jc0 + jt * NR;
                    unsafe {
                        micro_kernel(a_tile, b_tile, kc_len, cptr.get().add(c_off), n, mr_len, nr_len, first);
                    }
                }
            }
        };

        if m_chunks == 1 {
            // Fused: each task packs its own panel and consumes it while hot.
            run_tasks(par, jc_blocks, &|jc| {
                let nc_len = NC.min(n - jc * NC);
                let panel = pack_b(bsrc, kc0, kc_len, jc * NC, nc_len);
                kernel_block(&panel, jc, 0, m_tiles);
            });
        } else {
            // Shared panels: pack once per column block, then fan out rows.
            let panels: Vec<Vec<f64>> = crate::parallel::run_collect(par, jc_blocks, |jc| {
                let nc_len = NC.min(n - jc * NC);
                pack_b(bsrc, kc0, kc_len, jc * NC, nc_len)
            });
            run_tasks(par, jc_blocks * m_chunks, &|t| {
                let jc = t % jc_blocks;
                let mc = t / jc_blocks;
                let tile_lo = mc * m_chunk_tiles;
                let tile_hi = (tile_lo + m_chunk_tiles).min(m_tiles);
                kernel_block(&panels[jc], jc, tile_lo, tile_hi);
            });
        }
        kc0 += kc_len;
    }
}

fn current_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads().max(1)
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

fn run_tasks<F: Fn(usize) + Sync>(par: bool, n_tasks: usize, f: &F) {
    if par {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0..n_tasks).into_par_iter().for_each(f);
            return;
        }
    }
    for t in 0..n_tasks {
        f(t);
    }
}

/// A block `[kc0..kc0+kc_len)` packed as MR-tall tiles, zero-padded rows.
fn pack_a(a: &[f64], m: usize, lda: usize, kc0: usize, kc_len: usize) -> Vec<f64> {
    let m_tiles = m.div_ceil(MR);
    let mut out = vec![0.0; m_tiles * kc_len * MR];
    for mt in 0..m_tiles {
        let tile = &mut out[mt * kc_len * MR..(mt + 1) * kc_len * MR];
        let rows = MR.min(m - mt * MR);
        for i in 0..rows {
            let arow = &a[(mt * MR + i) * lda + kc0..][..kc_len];
            for (kk, &v) in arow.iter().enumerate() {
                tile[kk * MR + i] = v;
            }
        }
    }
    out
}

/// Pack a `[kc_len x nc_len]` block of B into NR-wide column tiles.
fn pack_b<B: RowFill>(bsrc: &B, kc0: usize, kc_len: usize, jc0: usize, nc_len: usize) -> Vec<f64> {
    let n_tiles = nc_len.div_ceil(NR);
    let mut panel = vec![0.0; n_tiles * kc_len * NR];
    let mut row = [0.0f64; NC];
    let row = &mut row[..nc_len];
    for kk in 0..kc_len {
        bsrc.fill(kc0 + kk, jc0, row);
        for jt in 0..n_tiles {
            let cols = NR.min(nc_len - jt * NR);
            let dst = &mut panel[jt * kc_len * NR + kk * NR..][..cols];
            dst.copy_from_slice(&row[jt * NR..jt * NR + cols]);
        }
    }
    panel
}

/// MR x NR register-tiled kernel over a packed (A tile, B tile) pair.
///
/// # Safety
/// `c` must point at row 0, col 0 of an `mr_len x nr_len` block inside a
/// live `[.. x ldc]` matrix, and no other thread may touch that block.
#[allow(clippy::too_many_arguments)]
#[inline]
unsafe fn micro_kernel(
    a_tile: &[f64],
    b_tile: &[f64],
    kc_len: usize,
    c: *mut f64,
    ldc: usize,
    mr_len: usize,
    nr_len: usize,
    overwrite: bool,
) {
    let mut acc = [[0.0f64; NR]; MR];
    debug_assert_eq!(a_tile.len(), kc_len * MR);
    debug_assert_eq!(b_tile.len(), kc_len * NR);
    for kk in 0..kc_len {
        let av: &[f64] = &a_tile[kk * MR..kk * MR + MR];
        let bv: &[f64] = &b_tile[kk * NR..kk * NR + NR];
        for i in 0..MR {
            let ai = av[i];
            for j in 0..NR {
                acc[i][j] = ai.mul_add(bv[j], acc[i][j]);
            }
        }
    }
    for i in 0..mr_len {
        let crow = c.add(i * ldc);
        if overwrite {
            for j in 0..nr_len {
                *crow.add(j) = acc[i][j];
            }
        } else {
            for j in 0..nr_len {
                *crow.add(j) += acc[i][j];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(m: usize, k: usize, n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut c = vec![0.0; m * n];
        for i in 0..m {
            for j in 0..n {
                let mut s = 0.0;
                for p in 0..k {
                    s += a[i * k + p] * b[p * n + j];
                }
                c[i * n + j] = s;
            }
        }
        c
    }

    fn fill(len: usize, seed: u64) -> Vec<f64> {
        // Small LCG; values in [-1, 1).
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15) | 1;
        (0..len)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
            })
            .collect()
    }

    #[test]
    fn matches_naive_on_odd_shapes() {
        for &(m, k, n) in &[(1, 1, 1), (3, 5, 7), (4, 16, 16), (5, 321, 130), (64, 70, 300), (130, 40, 3)] {
            let a = fill(m * k, 1 + m as u64);
            let b = fill(k * n, 2 + n as u64);
            let want = naive(m, k, n, &a, &b);
            let mut c = vec![0.0; m * n];
            gemm_slices(m, k, n, &a, &b, &mut c);
            for (x, y) in c.iter().zip(&want) {
                assert!((x - y).abs() <= 1e-12 * (1.0 + y.abs()), "{m}x{k}x{n}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn accumulate_adds_on_top() {
        let (m, k, n) = (7, 33, 19);
        let a = fill(m * k, 3);
        let b = fill(k * n, 4);
        let want: Vec<f64> = naive(m, k, n, &a, &b).iter().map(|v| v + 1.0).collect();
        let mut c = vec![1.0; m * n];
        gemm_with(m, k, n, &a, &SliceRows { b: &b, n }, &mut c, true);
        for (x, y) in c.iter().zip(&want) {
            assert!((x - y).abs() <= 1e-12 * (1.0 + y.abs()));
        }
    }

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        // Narrow and wide outputs exercise both task-splitting strategies.
        for &(m, k, n) in &[(64, 576, 1000), (576, 1024, 64)] {
            let a = fill(m * k, 5);
            let b = fill(k * n, 6);
            let mut c1 = vec![0.0; m * n];
            let mut c2 = vec![0.0; m * n];
            gemm_with(m, k, n, &a, &SliceRows { b: &b, n }, &mut c1, false);
            gemm_with_seq(m, k, n, &a, &SliceRows { b: &b, n }, &mut c2, false);
            assert_eq!(c1, c2);
        }
    }
}
