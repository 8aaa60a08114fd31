//! Execution backend: data-parallel with the `parallel` feature (rayon),
//! plain iteration without it.
//!
//! Every reduction in this crate goes through the fixed-order pairwise trees
//! below, so results are bit-identical whichever backend runs and however
//! many worker threads rayon happens to use. Parallel sections only ever
//! *map* work items into an index-ordered buffer; combining stays
//! deterministic.

use num_complex::Complex64;

/// Evaluate `f` over `0..len` and collect results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..len).into_par_iter().map(f).collect()
}

/// Evaluate `f` over `0..len` and collect results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..len).map(f).collect()
}

/// Run `f` on a dedicated pool of `threads` workers (used by the CLI's
/// `--threads` cap). `None` keeps the ambient pool. Without the `parallel`
/// feature the closure just runs on the current thread.
#[cfg(feature = "parallel")]
pub fn run_with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("failed to build worker pool")
            .install(f),
        None => f(),
    }
}

/// Run `f` on a dedicated pool of `threads` workers (used by the CLI's
/// `--threads` cap). `None` keeps the ambient pool. Without the `parallel`
/// feature the closure just runs on the current thread.
#[cfg(not(feature = "parallel"))]
pub fn run_with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    let _ = threads;
    f()
}

/// Sum with a fixed-shape pairwise tree. The tree depends only on `xs.len()`,
/// never on thread count, so the rounding pattern is reproducible.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        3 => (xs[0] + xs[1]) + xs[2],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Complex variant of [`pairwise_sum`].
pub fn pairwise_sum_complex(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => xs[0],
        2 => xs[0] + xs[1],
        3 => (xs[0] + xs[1]) + xs[2],
        n => {
            let mid = n / 2;
            pairwise_sum_complex(&xs[..mid]) + pairwise_sum_complex(&xs[mid..])
        }
    }
}
