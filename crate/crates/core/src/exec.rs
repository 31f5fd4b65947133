//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] runs
//! on the current rayon pool. Without it both variants run sequentially, so
//! callers never need to cfg-gate anything. Every reduction used here is a
//! maximum or a short-circuiting `any`, so results do not depend on the
//! execution mode or the scheduling order.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when this mode will actually use more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    pub(crate) fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    pub(crate) fn any<T, F>(self, items: &[T], f: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return items.par_iter().any(f);
        }
        items.iter().any(f)
    }

    /// Maps every item and folds with an associative, commutative `merge`.
    pub(crate) fn map_reduce<T, A, M, R>(self, items: &[T], identity: A, map: M, merge: R) -> A
    where
        T: Sync,
        A: Copy + Send + Sync,
        M: Fn(&T) -> A + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return items
                .par_iter()
                .with_min_len(256)
                .map(&map)
                .reduce(|| identity, &merge);
        }
        items.iter().map(map).fold(identity, merge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<f64> = (0..10_000).map(|i| ((i * 37) % 1001) as f64).collect();
        for mode in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(mode.map(&xs[..5], |x| x * 2.0), vec![0.0, 74.0, 148.0, 222.0, 296.0]);
            assert!(mode.any(&xs, |&x| x == 1000.0));
            assert!(!mode.any(&xs, |&x| x > 1000.0));
            assert_eq!(mode.map_reduce(&xs, 0.0, |&x| x, f64::max), 1000.0);
        }
    }
}
