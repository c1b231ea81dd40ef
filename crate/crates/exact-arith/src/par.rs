//! Execution strategy shared by every enumeration sweep in the workspace.
//!
//! With the default `parallel` feature, [`Strategy::Parallel`] dispatches to rayon;
//! without it the same call silently runs sequentially, so every code path stays
//! available in a single-threaded build. Results are always returned in input
//! order, which keeps reports deterministic.

use std::ops::Range;

/// How a data-parallel sweep is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// `true` when this strategy will actually use worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// Map `f` over a slice, preserving order.
pub fn map<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy == Strategy::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// Map `f` over an index range, preserving order.
pub fn map_range<R, F>(strategy: Strategy, range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy == Strategy::Parallel {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    let _ = strategy;
    range.map(f).collect()
}

/// Sum of `f(i)` over an index range (for counting sweeps).
pub fn sum_range<F>(strategy: Strategy, range: Range<u64>, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy == Strategy::Parallel {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).sum();
    }
    let _ = strategy;
    range.map(f).sum()
}

/// Run `f` inside a pool limited to `jobs` threads (`None` = rayon default).
/// Without the `parallel` feature this simply calls `f`.
pub fn with_jobs<R: Send, F: FnOnce() -> R + Send>(jobs: Option<usize>, f: F) -> R {
    #[cfg(feature = "parallel")]
    if let Some(j) = jobs {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            return pool.install(f);
        }
    }
    let _ = jobs;
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map(Strategy::Sequential, &xs, |x| x * x);
        let b = map(Strategy::Parallel, &xs, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(
            map_range(Strategy::Parallel, 0..50, |i| i + 1),
            map_range(Strategy::Sequential, 0..50, |i| i + 1)
        );
        assert_eq!(sum_range(Strategy::Parallel, 0..101, |i| i), 5050);
        assert_eq!(with_jobs(Some(2), || sum_range(Strategy::Parallel, 0..10, |i| i)), 45);
    }
}
