//! Bounded worker pool for per-aggregate work.
//!
//! The width comes from `PIGRAD_THREADS` (default: rayon's choice). Results
//! are always collected in input order, so output does not depend on width.

use std::sync::OnceLock;

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

pub const THREADS_ENV: &str = "PIGRAD_THREADS";

fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = ThreadPoolBuilder::new();
        if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0)
        {
            builder = builder.num_threads(n);
        }
        builder.build().expect("failed to start worker pool")
    })
}

/// Order-preserving parallel map.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    pool().install(|| items.par_iter().map(f).collect())
}
