//! Order-preserving data parallelism with a sequential fallback.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled and runs
    /// sequentially otherwise.
    #[default]
    Parallel,
}

/// `(0..n).map(f)`, collected in index order regardless of execution mode.
pub fn map_range<T, F>(exec: Execution, n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..n).map(f).collect(),
        Execution::Parallel => parallel_map(n, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T: Send, F: Fn(u64) -> T + Sync + Send>(n: u64, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T: Send, F: Fn(u64) -> T + Sync + Send>(n: u64, f: F) -> Vec<T> {
    (0..n).map(f).collect()
}
