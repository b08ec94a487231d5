//! Data-parallel iteration helpers. With the `parallel` feature the work is
//! distributed via rayon; without it the same helpers run sequentially, so
//! call sites are identical either way and results keep a deterministic order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n` and concatenates the per-index result vectors,
/// preserving index order.
#[cfg(feature = "parallel")]
pub fn flat_map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    (0..n).into_par_iter().flat_map_iter(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn flat_map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> Vec<T>,
{
    (0..n).flat_map(f).collect()
}

/// True iff `pred` holds for every index in `0..n`.
#[cfg(feature = "parallel")]
pub fn all_indices<F>(n: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    (0..n).into_par_iter().all(pred)
}

#[cfg(not(feature = "parallel"))]
pub fn all_indices<F>(n: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool,
{
    (0..n).all(pred)
}
