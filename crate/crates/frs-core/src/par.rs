//! Thin indirection over rayon so every hot loop has a sequential fallback.
//!
//! With the `parallel` feature (default) these run on the current rayon pool;
//! without it they degrade to plain iteration. All call sites map an index
//! range to a value per index and collect positionally, so results are
//! identical regardless of thread count or scheduling order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `0..n` to values, collecting in index order.
pub(crate) fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Map each element of a slice, collecting in input order.
pub(crate) fn map_slice<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
