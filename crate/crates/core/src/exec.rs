//! Execution policy for the data-parallel loops (subset scans, enumeration,
//! per-simplex evaluation).
//!
//! With the `parallel` feature (default) `Execution::Parallel` runs on a rayon
//! pool; without it every policy falls back to the sequential path. Results are
//! always returned in input order, so the two paths are interchangeable.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Sequential,
    /// `jobs == 0` means "use the global pool".
    Parallel { jobs: usize },
}

impl Execution {
    pub fn from_jobs(jobs: usize) -> Self {
        if jobs <= 1 {
            Execution::Sequential
        } else {
            Execution::Parallel { jobs }
        }
    }

    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && matches!(self, Execution::Parallel { .. })
    }

    /// Order-preserving map over a slice.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel { jobs } => {
                use rayon::prelude::*;
                self.install(*jobs, || items.par_iter().map(&f).collect())
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Order-preserving map over `0..len`.
    pub fn map_range<R, F>(&self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel { jobs } => {
                use rayon::prelude::*;
                self.install(*jobs, || (0..len).into_par_iter().map(&f).collect())
            }
            _ => (0..len).map(f).collect(),
        }
    }

    #[cfg(feature = "parallel")]
    fn install<R: Send>(&self, jobs: usize, op: impl FnOnce() -> R + Send) -> R {
        if jobs == 0 {
            return op();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        }
    }
}
