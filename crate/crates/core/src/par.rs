//! Per-node data parallelism.
//!
//! With the `parallel` feature (default) the per-node passes run on the
//! rayon pool; without it, or with [`Execution::Sequential`], they run on
//! the calling thread. Both paths produce identical output in node order.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

// below this many items, or on a one-thread pool, the overhead dominates
#[cfg(feature = "parallel")]
const MIN_PARALLEL_LEN: usize = 4096;

/// `items.iter().map(f).collect()`, possibly across threads.
pub fn map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel && items.len() >= MIN_PARALLEL_LEN && rayon::current_num_threads() > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// `(0..n).map(f).collect()`, possibly across threads.
pub fn map_range<U, F>(exec: Execution, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel && n >= MIN_PARALLEL_LEN && rayon::current_num_threads() > 1 {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let xs: Vec<u64> = (0..20_000).collect();
        let check = || {
            let a = map(Execution::Sequential, &xs, |x| x * x + 1);
            let b = map(Execution::Parallel, &xs, |x| x * x + 1);
            assert_eq!(a, b);
            assert_eq!(map_range(Execution::Parallel, 10_000, |i| i as u32), map_range(Execution::Sequential, 10_000, |i| i as u32));
        };
        check();
        // force a multi-thread pool so the rayon path runs even on one core
        #[cfg(feature = "parallel")]
        rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(check);
    }
}
