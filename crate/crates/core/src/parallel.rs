//! Data-parallel helpers with a sequential fallback.
//!
//! Every batch operation in the crate takes an [`ExecMode`]. Results are always
//! collected in index order, so the parallel and sequential paths return the
//! same values.

/// How batch work (multi-start searches, seed sweeps) is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    /// Uses the rayon pool. Falls back to sequential when the `parallel`
    /// feature is disabled.
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Evaluates `f(0..n)` and returns the results in index order.
pub fn map_indexed<T, F>(mode: ExecMode, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Returns the smallest index `i < n` for which `f(i)` is `Some`, with its
/// value. The parallel path abandons indices above a known hit, so the result
/// is the same as the sequential scan.
pub fn find_first<T, F>(mode: ExecMode, n: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().find_map_first(|i| f(i).map(|v| (i, v)))
        }
        _ => (0..n).find_map(|i| f(i).map(|v| (i, v))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let a = map_indexed(ExecMode::Sequential, 100, |i| i * i);
        let b = map_indexed(ExecMode::Parallel, 100, |i| i * i);
        assert_eq!(a, b);
    }

    #[test]
    fn find_first_returns_lowest_index() {
        for mode in [ExecMode::Sequential, ExecMode::Parallel] {
            let hit = find_first(mode, 1000, |i| (i % 97 == 96).then_some(i * 2));
            assert_eq!(hit, Some((96, 192)));
            assert_eq!(find_first(mode, 10, |_| None::<u8>), None);
        }
    }
}
