//! Thin dispatch layer between the rayon and sequential execution paths.
//!
//! Every helper here has identical output on both paths: work is split so
//! that each output region is written by exactly one task, and all
//! reductions happen in a fixed order. Toggling the `parallel` feature must
//! never change a single bit of any result.

/// Map `0..n` to owned results, preserving index order in the output.
pub fn par_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Run `f` on disjoint mutable chunks of `data`, passing the chunk index.
pub fn par_chunks_mut<T, F>(data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    assert!(chunk > 0);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        data.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(i, c)| f(i, c));
    }
    #[cfg(not(feature = "parallel"))]
    {
        data.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
    }
}

/// Sequential variants, always available so benches can compare both paths.
pub fn seq_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Like [`par_collect`] but with the path chosen at runtime.
pub fn run_collect<T, F>(par: bool, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if par {
        par_collect(n, f)
    } else {
        seq_collect(n, f)
    }
}
