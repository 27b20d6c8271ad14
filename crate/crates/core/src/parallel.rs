use rayon::ThreadPool;

use crate::error::{Error, Result};

/// Environment variable consulted for the default worker count.
pub const WORKERS_ENV: &str = "TRAJHASH_WORKERS";

/// Worker count used when none is configured.
pub const DEFAULT_WORKERS: usize = 16;

/// Worker count from [`WORKERS_ENV`], falling back to [`DEFAULT_WORKERS`].
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(DEFAULT_WORKERS)
}

pub(crate) fn pool(workers: usize) -> Result<ThreadPool> {
    if workers == 0 {
        return Err(Error::Config("worker count must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {workers} workers: {e}")))
}

/// Runs `f` on a pool of exactly `workers` threads.
pub(crate) fn run<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 1 {
        return Ok(f());
    }
    Ok(pool(workers)?.install(f))
}
