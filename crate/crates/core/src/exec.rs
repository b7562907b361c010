//! Execution mode for the batch workloads (validation trials, sweeps, path
//! enumeration). Without the `parallel` feature every mode runs sequentially.
//!
//! Results never depend on the mode: per-item work is seeded by item index,
//! and reductions are exact (integer sums, `min` over floats).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run `Parallel` on more than one thread.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.into_par_iter().map(f).collect(),
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// `sum_{i in 0..len} f(i)`.
    pub fn sum_indexed<F>(self, len: u64, f: F) -> u128
    where
        F: Fn(u64) -> u128 + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..len).into_par_iter().map(f).sum(),
            _ => (0..len).map(f).sum(),
        }
    }
}
