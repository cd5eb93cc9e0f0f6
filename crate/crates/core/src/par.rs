//! Execution strategy for data-parallel loops.
//!
//! With the `parallel` feature, [`Execution::Parallel`] dispatches to rayon;
//! without it every loop runs sequentially. Results are always collected in
//! input order, so outputs never depend on the strategy or thread count.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this strategy will actually run on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

pub fn par_map<T, U, F>(items: &[T], exec: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Split `0..n` into consecutive chunks of `chunk` indices and map each.
pub(crate) fn map_chunks<U, F>(n: u64, chunk: u64, exec: Execution, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(Range<u64>) -> U + Sync + Send,
{
    let chunk = chunk.max(1);
    let count = n.div_ceil(chunk);
    let range = move |k: u64| k * chunk..((k + 1) * chunk).min(n);

    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..count).into_par_iter().map(|k| f(range(k))).collect();
    }
    let _ = exec;
    (0..count).map(|k| f(range(k))).collect()
}
