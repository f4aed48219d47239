//! Exhaustive minimum-cover search over all `k`-subsets, for cross-checking
//! the branch-and-bound solver at small sizes.

use fixedbitset::FixedBitSet;

/// True if some `k` of `sets` have union containing `universe`.
pub fn some_k_subset_covers(universe: &FixedBitSet, sets: &[FixedBitSet], k: usize) -> bool {
    fn rec(u: &FixedBitSet, sets: &[FixedBitSet], start: usize, k: usize) -> bool {
        if u.is_clear() {
            return true;
        }
        if k == 0 {
            return false;
        }
        (start..sets.len()).any(|i| {
            let mut next = u.clone();
            next.difference_with(&sets[i]);
            rec(&next, sets, i + 1, k - 1)
        })
    }
    rec(universe, sets, 0, k)
}

/// Least `k` such that some `k` of `sets` cover `universe`, searching
/// `k = 0, 1, …, max_k`.
pub fn min_cover_size(universe: &FixedBitSet, sets: &[FixedBitSet], max_k: usize) -> Option<usize> {
    (0..=max_k).find(|&k| some_k_subset_covers(universe, sets, k))
}
