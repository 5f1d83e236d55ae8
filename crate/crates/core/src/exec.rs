//! Order-preserving data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature off every call runs on the current thread;
//! results are identical either way.

/// Worker count for a batch. `1` always runs sequentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threads(pub usize);

impl Threads {
    pub const SEQUENTIAL: Threads = Threads(1);

    /// `GALLAI_THREADS` if set and valid, else the machine's parallelism.
    pub fn from_env() -> Threads {
        std::env::var("GALLAI_THREADS")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&t| t > 0)
            .map(Threads)
            .unwrap_or_else(Threads::available)
    }

    pub fn available() -> Threads {
        Threads(std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn is_sequential(self) -> bool {
        self.0 <= 1 || !cfg!(feature = "parallel")
    }
}

impl Default for Threads {
    fn default() -> Self {
        Threads::available()
    }
}

/// `items.iter().map(f).collect()`, fanned out over `threads` workers.
pub fn map<T, R, F>(threads: Threads, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if threads.is_sequential() || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    par_map(threads.0, items, f)
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(threads: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match pool(threads) {
        Some(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        None => items.iter().map(f).collect(),
    }
}

/// One pool per distinct worker count, built on first use.
#[cfg(feature = "parallel")]
fn pool(threads: usize) -> Option<std::sync::Arc<rayon::ThreadPool>> {
    use std::collections::HashMap;
    use std::sync::{Arc, Mutex, OnceLock};
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<rayon::ThreadPool>>>> = OnceLock::new();
    let mut pools = POOLS.get_or_init(Default::default).lock().ok()?;
    if let Some(p) = pools.get(&threads) {
        return Some(p.clone());
    }
    let p = Arc::new(rayon::ThreadPoolBuilder::new().num_threads(threads).build().ok()?);
    pools.insert(threads, p.clone());
    Some(p)
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(_threads: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}
