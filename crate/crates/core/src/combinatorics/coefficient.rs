//! The coefficient `C_{L,k+c}` counting partitions of an `n`-set into blocks
//! of sizes `l_1, ..., l_k` together with `c` singletons, evaluated as a
//! nested sum over the positions of the singletons.
//!
//! A placement is a chain `0 = r_{c+1} < r_c < ... < r_1 < r_0 = k + c + 1`:
//! the `r_q` are the slots of the `c` singletons among `k + c` slots ordered by
//! largest element. Block `p` sitting between `r_{q+1}` and `r_q` is preceded
//! by `c - q` singletons and contributes
//! `binom(l_1 + ... + l_p + s - 1, l_1 + ... + l_{p-1} + s)` with `s` that
//! number of preceding singletons: the block's largest element is the newest
//! one and its remaining `l_p - 1` elements are chosen among everything
//! placed before it.
//!
//! Taking instead `s = q` (the singletons *after* the block) gives
//! [`coefficient_c_ordered_trailing`], kept for comparison; it agrees with
//! `binom(n, c) * N_L` when `c = 0` or `k <= 1` only.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::combinatorics::{binomial, PartitionProfile};

/// `C` for an ordered block-size tuple, counting singletons that precede
/// each block.
pub fn coefficient_c_ordered(lengths: &[usize], c: usize) -> BigUint {
    nested_sum(lengths, c, |q| c - q)
}

/// `C` for an ordered tuple with the trailing-singleton offset `s = q`.
pub fn coefficient_c_ordered_trailing(lengths: &[usize], c: usize) -> BigUint {
    nested_sum(lengths, c, |q| q)
}

/// `C` for a profile: the sum of [`coefficient_c_ordered`] over the distinct
/// orderings of its block sizes. Equals `binom(n, c) * profile_count(profile)`
/// with `n = profile.n() + c`.
pub fn coefficient_c(profile: &PartitionProfile, c: usize) -> BigUint {
    profile
        .orderings()
        .iter()
        .map(|lengths| coefficient_c_ordered(lengths, c))
        .sum()
}

/// Profile-level sum of [`coefficient_c_ordered_trailing`].
pub fn coefficient_c_trailing(profile: &PartitionProfile, c: usize) -> BigUint {
    profile
        .orderings()
        .iter()
        .map(|lengths| coefficient_c_ordered_trailing(lengths, c))
        .sum()
}

fn nested_sum(lengths: &[usize], c: usize, offset: impl Fn(usize) -> usize) -> BigUint {
    assert!(lengths.iter().all(|&l| l >= 1), "block sizes must be positive");
    let k = lengths.len();
    let slots = k + c;
    // prefix[p] = l_1 + ... + l_p
    let prefix: Vec<usize> = std::iter::once(0)
        .chain(lengths.iter().scan(0, |acc, &l| {
            *acc += l;
            Some(*acc)
        }))
        .collect();

    let mut total = BigUint::zero();
    for chosen in (1..=slots).combinations(c) {
        // r[0] = k + c + 1, r[1] > ... > r[c], r[c + 1] = 0
        let r: Vec<usize> = std::iter::once(slots + 1)
            .chain(chosen.into_iter().rev())
            .chain(std::iter::once(0))
            .collect();
        let mut product = BigUint::one();
        for q in 0..=c {
            // p runs over r_{q+1} + q - c + 1 ..= r_q + q - c - 1
            let lo = (r[q + 1] + q + 1) as isize - c as isize;
            let hi = (r[q] + q) as isize - c as isize - 1;
            let s = offset(q);
            for p in lo..=hi {
                let p = usize::try_from(p).expect("block index below 1");
                debug_assert!((1..=k).contains(&p));
                product *= binomial(prefix[p] + s - 1, prefix[p - 1] + s);
            }
        }
        total += product;
    }
    total
}
