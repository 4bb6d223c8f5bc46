//! Batch execution. With the `parallel` feature the batch helpers fan out
//! over rayon; without it (or with [`Exec::Sequential`]) they run in order.
//! Results are always returned in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Parallel,
    Sequential,
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
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    pub fn all<T, F>(self, items: &[T], f: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().all(f),
            _ => items.iter().all(f),
        }
    }

    /// Items on which `f` fails, in input order.
    pub fn failures<T, F>(self, items: &[T], f: F) -> Vec<usize>
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        self.map(items, f).into_iter().enumerate().filter(|(_, ok)| !ok).map(|(i, _)| i).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let sq = |x: &u64| x * x;
        assert_eq!(Exec::Parallel.map(&items, sq), Exec::Sequential.map(&items, sq));
        assert_eq!(Exec::Parallel.failures(&items, |x| x % 7 != 0), Exec::Sequential.failures(&items, |x| x % 7 != 0));
        assert!(Exec::Sequential.all(&items, |x| *x < 1000));
    }
}
