//! Data-parallel helpers. With the `parallel` feature (default) the mapping
//! loops run on rayon; without it they fall back to plain iterators. The
//! sequential variants are always available so benchmarks can compare both.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map over a slice, parallel when the feature is enabled.
#[cfg(feature = "parallel")]
pub fn map_vec<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_vec<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Always-sequential variant, kept for benchmark comparison.
pub fn map_vec_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Check a predicate on every item; parallel when enabled.
#[cfg(feature = "parallel")]
pub fn all<T, F>(items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.par_iter().all(f)
}

#[cfg(not(feature = "parallel"))]
pub fn all<T, F>(items: &[T], f: F) -> bool
where
    F: Fn(&T) -> bool,
{
    items.iter().all(f)
}

pub fn all_seq<T, F>(items: &[T], f: F) -> bool
where
    F: Fn(&T) -> bool,
{
    items.iter().all(f)
}

/// First item failing a predicate, if any; deterministic (lowest index).
#[cfg(feature = "parallel")]
pub fn first_failure<T, F>(items: &[T], f: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    let fails: Vec<usize> = items
        .par_iter()
        .enumerate()
        .filter_map(|(i, t)| if f(t) { None } else { Some(i) })
        .collect();
    fails.into_iter().min()
}

#[cfg(not(feature = "parallel"))]
pub fn first_failure<T, F>(items: &[T], f: F) -> Option<usize>
where
    F: Fn(&T) -> bool,
{
    items.iter().position(|t| !f(t))
}
