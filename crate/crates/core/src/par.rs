//! Data-parallel helpers. With the `parallel` feature off, everything runs on
//! the calling thread.

use crate::enumerate::ExecMode;

/// Maps `f` over `items`, keeping the input order.
#[cfg(feature = "parallel")]
pub(crate) fn map<T, R, F>(items: &[T], mode: ExecMode, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match mode {
        ExecMode::Parallel => items.par_iter().map(f).collect(),
        ExecMode::Sequential => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<T, R, F>(items: &[T], _mode: ExecMode, f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Whether [`ExecMode::Parallel`] actually spreads work over threads.
pub const fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}
