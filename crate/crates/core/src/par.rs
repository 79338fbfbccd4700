//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) these run on the rayon global
//! pool; without it they are plain sequential loops. Output order is always
//! the input order, so results do not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `(0..len).map(f).collect()`, in parallel when enabled.
#[cfg(feature = "parallel")]
pub fn map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..len).map(f).collect()
}

/// `items.iter().map(f).collect()`, in parallel when enabled.
#[cfg(feature = "parallel")]
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    F: Fn(&S) -> T,
{
    items.iter().map(f).collect()
}

/// Sums `f(i)` over `0..len` with exact integer arithmetic.
#[cfg(feature = "parallel")]
pub fn sum_range_u64<F>(len: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    (0..len).into_par_iter().map(f).sum()
}

#[cfg(not(feature = "parallel"))]
pub fn sum_range_u64<F>(len: usize, f: F) -> u64
where
    F: Fn(usize) -> u64,
{
    (0..len).map(f).sum()
}

/// Element-wise sum of per-chunk count vectors. Chunks are split over
/// `0..len` and every chunk writes into its own buffer.
pub fn histogram<F>(len: usize, bins: usize, f: F) -> Vec<u64>
where
    F: Fn(usize, &mut [u64]) + Sync + Send,
{
    const CHUNK: usize = 64;
    let chunks = len.div_ceil(CHUNK);
    let partial = map_range(chunks, |c| {
        let mut h = vec![0u64; bins];
        for i in c * CHUNK..((c + 1) * CHUNK).min(len) {
            f(i, &mut h);
        }
        h
    });
    let mut total = vec![0u64; bins];
    for h in partial {
        for (t, v) in total.iter_mut().zip(h) {
            *t += v;
        }
    }
    total
}
