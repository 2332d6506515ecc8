//! Thin switch between rayon-backed and sequential iteration.
//!
//! Every parallel loop in the crate reduces with an associative, commutative
//! merge, so the sequential fallback produces bit-identical results.

#[cfg(feature = "parallel")]
pub(crate) fn map_reduce<T, R, M, F>(items: Vec<T>, map: M, identity: F, fold: fn(R, R) -> R) -> R
where
    T: Send,
    R: Send,
    M: Fn(T) -> R + Sync + Send,
    F: Fn() -> R + Sync + Send,
{
    use rayon::prelude::*;
    items
        .into_par_iter()
        .map(map)
        .reduce(&identity, |a, b| fold(a, b))
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_reduce<T, R, M, F>(items: Vec<T>, map: M, identity: F, fold: fn(R, R) -> R) -> R
where
    M: Fn(T) -> R,
    F: Fn() -> R,
{
    items.into_iter().map(map).fold(identity(), fold)
}
