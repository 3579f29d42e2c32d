//! Order-preserving map over a slice, data-parallel when the `parallel`
//! feature is enabled and [`Exec::Parallel`] is requested.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Execution mode for `jobs` worker threads: one job runs sequentially,
    /// more size the global thread pool (first call wins). `None` keeps the
    /// default.
    pub fn with_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            Some(0 | 1) => Exec::Sequential,
            #[cfg(feature = "parallel")]
            Some(n) => {
                // The pool may already exist; its size then stays as it was.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
                Exec::Parallel
            }
            _ => Exec::default(),
        }
    }

    /// `f` applied to every item; output order matches input order either way.
    pub fn map<T, U, G>(self, items: &[T], f: G) -> Vec<U>
    where
        T: Sync,
        U: Send,
        G: Fn(&T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = Exec::Sequential.map(&xs, |x| x * x);
        let par = Exec::Parallel.map(&xs, |x| x * x);
        assert_eq!(seq, par);
    }
}
