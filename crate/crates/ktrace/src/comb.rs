//! Shared combinatorics: capped binomials, lexicographic k-subset ranking and
//! unranking, and factorial-number-system permutation unranking. All of it
//! exists so that subset/permutation work can be indexed by rank and farmed
//! out to threads while keeping a deterministic order.

/// C(n, k), or None once the value would exceed `cap` (guards both overflow
/// and runaway work).
pub(crate) fn binomial_capped(n: usize, k: usize, cap: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// C(n, k) for the small arguments used internally (n ≤ 64 after caps have
/// been checked); panics if the caller forgot the cap.
pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    binomial_capped(n, k, u64::MAX >> 1).expect("binomial overflow; missing cap check")
}

/// The `rank`-th k-subset of {0..n} in lexicographic order.
pub(crate) fn unrank_subset(n: usize, k: usize, mut rank: u64, out: &mut Vec<usize>) {
    out.clear();
    let mut next = 0usize;
    let mut remaining = k;
    while remaining > 0 {
        // Subsets starting with `next` that complete with the remaining slots.
        let with_next = binomial(n - next - 1, remaining - 1);
        if rank < with_next {
            out.push(next);
            remaining -= 1;
        } else {
            rank -= with_next;
        }
        next += 1;
    }
}

/// Lexicographic rank of a strictly increasing k-subset of {0..n}.
pub(crate) fn rank_subset(n: usize, subset: &[usize]) -> u64 {
    let mut rank = 0u64;
    let mut prev = 0usize;
    for (slot, &s) in subset.iter().enumerate() {
        for skipped in prev..s {
            rank += binomial(n - skipped - 1, subset.len() - slot - 1);
        }
        prev = s + 1;
    }
    rank
}

/// n! as u64; callers cap n ≤ 20.
pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// The `rank`-th permutation of 0..n in lexicographic order (factorial
/// number system).
pub(crate) fn unrank_permutation(n: usize, mut rank: u64, out: &mut Vec<usize>) {
    out.clear();
    let mut pool: Vec<usize> = (0..n).collect();
    for slot in 0..n {
        let f = factorial(n - slot - 1);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
}

/// Parity of a permutation given as a sequence (not necessarily of 0..n):
/// returns +1.0 or -1.0. Counts inversions; quadratic, fine for tiny k.
pub(crate) fn sort_sign(values: &mut [usize]) -> f64 {
    let mut sign = 1.0;
    for i in 1..values.len() {
        let mut j = i;
        while j > 0 && values[j - 1] > values[j] {
            values.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}
