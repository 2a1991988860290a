//! Thin parallelism layer.
//!
//! Column-level work (cobar slices, weight-slice oracles, per-cell chart
//! validation) is an embarrassingly parallel map with a deterministic merge:
//! results are collected in input order, so the output is identical whether
//! the map runs on one thread or many. The `parallel` feature selects the
//! rayon backend; without it every entry point below degrades to a plain
//! sequential loop.

/// Execution mode for data-parallel maps.
///
/// `Parallel` is honored only when the crate is built with the `parallel`
/// feature; otherwise it silently behaves like `Sequential`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    #[default]
    Parallel,
    Sequential,
}

impl ExecMode {
    /// True when this mode will actually fan out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecMode::Parallel
    }
}

/// Caps the global worker pool. First call wins; returns whether the cap
/// took effect (always false without the `parallel` feature).
pub fn set_worker_cap(n: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
        false
    }
}

/// Order-preserving map over owned items.
pub fn map<T, U, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode.is_parallel() {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
    }
    let _ = mode;
    items.into_iter().map(f).collect()
}

/// Order-preserving map over a slice.
pub fn map_ref<'a, T, U, F>(mode: ExecMode, items: &'a [T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&'a T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    let _ = mode;
    items.iter().map(f).collect()
}
