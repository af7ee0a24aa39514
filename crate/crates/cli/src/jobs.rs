//! Worker pool and environment limits.

use std::sync::OnceLock;

use rayon::prelude::*;
use rayon::ThreadPool;

use aca_core::state::MAX_ENUMERATION_N;

pub const WORKERS_VAR: &str = "ACA_WORKERS";
pub const MAX_N_VAR: &str = "ACA_MAX_N";

fn env_u32(var: &str) -> Option<u32> {
    std::env::var(var).ok().and_then(|v| v.trim().parse().ok())
}

/// Worker count from `ACA_WORKERS`, or every available core.
pub fn workers() -> usize {
    match env_u32(WORKERS_VAR) {
        Some(w) if w > 0 => w as usize,
        _ => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    }
}

/// Largest ring size the commands will enumerate, from `ACA_MAX_N`.
pub fn max_n() -> u32 {
    env_u32(MAX_N_VAR).map_or(MAX_ENUMERATION_N, |n| n.min(MAX_ENUMERATION_N))
}

fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        rayon::ThreadPoolBuilder::new().num_threads(workers()).build().expect("thread pool")
    })
}

/// Runs `f` over `items` on the pool; results keep the input order.
pub fn par_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    pool().install(|| items.into_par_iter().map(f).collect())
}
