//! Order-preserving data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature, work is spread over a rayon pool; without
//! it, or when `threads == 1`, the closure runs in a plain loop. Results are
//! always returned in index order, so callers see identical output whichever
//! path ran.

/// Environment variable consulted by [`default_threads`].
pub const THREADS_ENV: &str = "FRONTIER_LP_THREADS";

/// Thread count from `FRONTIER_LP_THREADS`, or 0 (use all available cores).
pub fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(0)
}

/// Whether this build can run work in parallel.
pub fn available() -> bool {
    cfg!(feature = "parallel")
}

/// Sizes the global pool used when `threads == 0`; 0 keeps the default.
///
/// Returns false when the pool was already initialised.
#[allow(unused_variables)]
pub fn configure_global(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        if threads > 0 {
            return rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .is_ok();
        }
    }
    true
}

/// `(0..n).map(f).collect()`, possibly in parallel.
///
/// `threads == 0` uses the global pool, `threads == 1` forces the sequential
/// path and any other value runs in a dedicated pool of that size.
#[allow(unused_variables)]
pub fn map<T, F>(n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if threads != 1 && n > 1 {
            if threads == 0 {
                return (0..n).into_par_iter().map(&f).collect();
            }
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
                return pool.install(|| (0..n).into_par_iter().map(&f).collect());
            }
        }
    }
    (0..n).map(f).collect()
}
