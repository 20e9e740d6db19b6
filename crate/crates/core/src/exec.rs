//! Execution policy for the data-parallel loops.
//!
//! With the `parallel` feature (default) work is spread over a rayon pool;
//! without it, or with [`Exec::sequential`], everything runs on the calling
//! thread. Results always come back in input order, so output does not
//! depend on the worker count.

#[cfg(feature = "parallel")]
use std::sync::Arc;

#[derive(Clone)]
pub struct Exec {
    #[cfg(feature = "parallel")]
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl std::fmt::Debug for Exec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Exec(workers={})", self.workers())
    }
}

impl Default for Exec {
    fn default() -> Self {
        Self::parallel(None)
    }
}

impl Exec {
    pub fn sequential() -> Self {
        Exec {
            #[cfg(feature = "parallel")]
            pool: None,
        }
    }

    /// A pool with `workers` threads, or rayon's default (available
    /// parallelism) for `None`. Falls back to sequential execution when the
    /// crate is built without the `parallel` feature or the pool cannot be
    /// created.
    pub fn parallel(workers: Option<usize>) -> Self {
        #[cfg(feature = "parallel")]
        {
            let mut builder = rayon::ThreadPoolBuilder::new();
            if let Some(n) = workers {
                builder = builder.num_threads(n.max(1));
            }
            Exec {
                pool: builder.build().ok().map(Arc::new),
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = workers;
            Self::sequential()
        }
    }

    pub fn workers(&self) -> usize {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.current_num_threads();
        }
        1
    }

    pub fn is_parallel(&self) -> bool {
        #[cfg(feature = "parallel")]
        return self.pool.is_some();
        #[cfg(not(feature = "parallel"))]
        false
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            return pool.install(|| items.par_iter().map(f).collect());
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over an index range.
    pub fn map_range<R, F>(&self, range: std::ops::Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            return pool.install(|| range.into_par_iter().map(f).collect());
        }
        range.map(f).collect()
    }
}
