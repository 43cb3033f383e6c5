//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) work items are spread over the
//! rayon pool. Without it, or when [`Mode::Sequential`] is requested, items run
//! in order on the calling thread. Results are always returned in input order.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    #[default]
    Parallel,
}

impl Mode {
    /// Whether parallel execution is compiled in.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Caps the global worker pool at `threads`; a no-op without the `parallel` feature
/// or once the pool has started.
pub fn set_thread_limit(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(mode: Mode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Mode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..200).collect();
        let a = map(Mode::Sequential, &xs, |x| x * x);
        let b = map(Mode::Parallel, &xs, |x| x * x);
        assert_eq!(a, b);
    }
}
