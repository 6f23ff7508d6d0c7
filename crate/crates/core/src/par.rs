//! Internal switch between rayon-backed and plain sequential scanning.
//!
//! Both entry points preserve scan-order semantics: `find_map_first`
//! returns the hit for the earliest item in the input order regardless of
//! which worker found it, and `map_collect_vec` keeps output positions
//! aligned with input positions. Call sites can therefore promise
//! deterministic, sequential-equivalent results under either feature
//! setting.

#[cfg(feature = "parallel")]
pub(crate) fn find_map_first<T, U, F>(items: Vec<T>, f: F) -> Option<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Option<U> + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn find_map_first<T, U, F>(items: Vec<T>, f: F) -> Option<U>
where
    F: Fn(T) -> Option<U>,
{
    items.into_iter().find_map(f)
}

#[cfg(feature = "parallel")]
pub(crate) fn map_collect_vec<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect_vec<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
