//! Sequential and rayon-backed execution of independent index-space work.

/// How box scans and sweeps are executed.
///
/// Both strategies produce identical, identically ordered results. Without
/// the `parallel` feature, [`Strategy::Parallel`] runs sequentially.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// Applies `f` to every index in `0..n`, keeping the `Some` results in index order.
    pub(crate) fn filter_map_range<T, F>(self, n: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().filter_map(f).collect()
            }
            _ => (0..n).filter_map(f).collect(),
        }
    }

    /// Maps `f` over `items`, preserving order.
    pub(crate) fn map<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// True iff `f` holds for every index in `0..n`.
    pub(crate) fn all_range<F>(self, n: u64, f: F) -> bool
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().all(f)
            }
            _ => (0..n).all(f),
        }
    }
}

/// Integer points of the box `[-radius, radius]^rank`, addressed by a flat index.
#[derive(Clone, Copy, Debug)]
pub(crate) struct BoxPoints {
    rank: usize,
    radius: i64,
    side: u64,
    len: u64,
}

impl BoxPoints {
    /// Returns `None` if the box has more than `u64::MAX` points.
    pub(crate) fn new(rank: usize, radius: u64) -> Option<Self> {
        let radius_i = i64::try_from(radius).ok()?;
        let side = radius.checked_mul(2)?.checked_add(1)?;
        let mut len: u64 = 1;
        for _ in 0..rank {
            len = len.checked_mul(side)?;
        }
        Some(BoxPoints {
            rank,
            radius: radius_i,
            side,
            len,
        })
    }

    pub(crate) fn len(&self) -> u64 {
        self.len
    }

    /// Coordinates of the `index`-th point; the first coordinate varies slowest,
    /// so index order is lexicographic order.
    pub(crate) fn point(&self, mut index: u64) -> Vec<i64> {
        let mut coords = vec![0i64; self.rank];
        for slot in coords.iter_mut().rev() {
            *slot = (index % self.side) as i64 - self.radius;
            index /= self.side;
        }
        coords
    }
}
