//! Data-parallel execution helpers.
//!
//! With the default `parallel` feature the batch entry points fan work out
//! over rayon; without it they run sequentially with identical results. The
//! `*_seq` variants are always available so benchmarks can compare the two.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving input order in the output.
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_collect_seq(items, f)
    }
}

/// Sequential counterpart of [`map_collect`].
pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Fold the index range `0..total` in chunks of `chunk` and merge the chunk
/// results. The merge order is fixed (ascending chunks), so the result is
/// deterministic whenever `merge` is associative.
pub fn fold_chunks<A, F, M>(total: u64, chunk: u64, init: A, fold_chunk: F, merge: M) -> A
where
    A: Send + Clone,
    F: Fn(u64, u64) -> A + Sync + Send,
    M: Fn(A, A) -> A,
{
    let chunk = chunk.max(1);
    let bounds: Vec<(u64, u64)> = (0..total)
        .step_by(chunk as usize)
        .map(|lo| (lo, (lo + chunk).min(total)))
        .collect();
    let parts = map_collect(bounds, |(lo, hi)| fold_chunk(lo, hi));
    parts.into_iter().fold(init, merge)
}

/// Sequential counterpart of [`fold_chunks`].
pub fn fold_chunks_seq<A, F, M>(total: u64, chunk: u64, init: A, fold_chunk: F, merge: M) -> A
where
    F: Fn(u64, u64) -> A,
    M: Fn(A, A) -> A,
{
    let chunk = chunk.max(1);
    let mut acc = init;
    let mut lo = 0;
    while lo < total {
        let hi = (lo + chunk).min(total);
        acc = merge(acc, fold_chunk(lo, hi));
        lo = hi;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let ys = map_collect(xs.clone(), |x| x * x);
        let zs = map_collect_seq(xs, |x| x * x);
        assert_eq!(ys, zs);
    }

    #[test]
    fn fold_chunks_matches_seq() {
        let sum = |lo: u64, hi: u64| (lo..hi).sum::<u64>();
        let a = fold_chunks(10_000, 64, 0u64, sum, |x, y| x + y);
        let b = fold_chunks_seq(10_000, 64, 0u64, sum, |x, y| x + y);
        assert_eq!(a, b);
        assert_eq!(a, 10_000 * 9_999 / 2);
    }
}
