//! Ordered parallel maps for family sweeps.

use rayon::prelude::*;
use rayon::ThreadPool;

use crate::config::THREADS_VAR;
use crate::error::{CliError, Result};

/// Pool sized by `HOLEXT_THREADS`, or rayon's default when unset.
pub fn pool() -> Result<ThreadPool> {
    let threads = match std::env::var(THREADS_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| {
                CliError::usage(format!(
                    "{THREADS_VAR} must be a positive integer, got `{v}`"
                ))
            })?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start thread pool: {e}")))
}

/// `items.map(f)` with results in input order regardless of scheduling.
pub fn ordered_map<T, R, F>(pool: &ThreadPool, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    pool.install(|| items.par_iter().map(&f).collect())
}
