//! Fan-out over independent subproblems. With the `parallel` feature and
//! `jobs != 1` the work runs on a dedicated rayon pool (`0` meaning every
//! core); otherwise it is a plain sequential map. Output order always matches input order.

#[cfg(feature = "parallel")]
pub(crate) fn map<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;

    if jobs == 1 || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<T, R, F>(items: &[T], _jobs: usize, f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Whether `jobs > 1` actually runs concurrently in this build.
pub const PARALLEL: bool = cfg!(feature = "parallel");
