//! Thread-pool executor for the core searches and suites.

use brannan_core::Executor;
use rayon::prelude::*;

/// A dedicated rayon pool; `threads = 0` takes rayon's default size.
pub struct Pool {
    pool: rayon::ThreadPool,
}

impl Pool {
    pub fn new(threads: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
        Ok(Pool { pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for Pool {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        // indexed collect keeps input order
        self.pool.install(|| items.par_iter().map(f).collect())
    }
}
