//! Data-parallel helpers.
//!
//! With the `parallel` feature the helpers dispatch to rayon; without it (or
//! inside [`sequential`]) they run on the calling thread. Every helper returns
//! results in input order, so callers get identical output either way.

use std::cell::Cell;
use std::ops::Range;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with every helper in this module forced onto the calling thread.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    let previous = FORCE_SEQUENTIAL.with(|flag| flag.replace(true));
    let out = f();
    FORCE_SEQUENTIAL.with(|flag| flag.set(previous));
    out
}

#[cfg(feature = "parallel")]
fn go_parallel() -> bool {
    !FORCE_SEQUENTIAL.with(|flag| flag.get())
}

/// Order-preserving map over a slice.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Order-preserving map over an index range.
pub fn map_range<U, F>(range: Range<usize>, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if go_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    range.map(f).collect()
}

/// Folds `range` in fixed-size blocks and combines the block results with
/// `reduce`. The blocking does not depend on the thread count, so an
/// associative `reduce` yields the same value under any schedule.
pub fn fold_blocks<A, F, R>(range: Range<u64>, block: u64, identity: A, fold: F, reduce: R) -> A
where
    A: Clone + Send + Sync,
    F: Fn(A, u64) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    let block = block.max(1);
    let len = range.end.saturating_sub(range.start);
    let blocks = len.div_ceil(block) as usize;
    let run_block = |b: usize| {
        let lo = range.start + b as u64 * block;
        let hi = (lo + block).min(range.end);
        (lo..hi).fold(identity.clone(), &fold)
    };
    let partials = map_range(0..blocks, run_block);
    partials.into_iter().fold(identity.clone(), reduce)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let ys = map(&xs, |x| x * x);
        assert_eq!(ys, xs.iter().map(|x| x * x).collect::<Vec<_>>());
        assert_eq!(sequential(|| map(&xs, |x| x * x)), ys);
    }

    #[test]
    fn fold_blocks_matches_sequential_sum() {
        let total = fold_blocks(0..10_001, 97, 0u64, |acc, i| acc + i, |a, b| a + b);
        assert_eq!(total, (0..10_001u64).sum::<u64>());
        let seq = sequential(|| fold_blocks(0..10_001, 97, 0u64, |acc, i| acc + i, |a, b| a + b));
        assert_eq!(seq, total);
    }
}
