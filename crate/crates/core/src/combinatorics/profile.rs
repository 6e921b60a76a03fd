use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::combinatorics::factorial;
use crate::error::{Error, Result};

/// Multiset of block sizes `(l_1, ..., l_k)`, stored non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionProfile {
    sizes: Vec<usize>,
}

impl PartitionProfile {
    pub fn new(sizes: impl Into<Vec<usize>>) -> Result<Self> {
        let sizes = sizes.into();
        if sizes.contains(&0) {
            return Err(Error::InvalidProfile(format!(
                "block sizes must be positive, got {sizes:?}"
            )));
        }
        Ok(Self::from_sizes_unchecked(sizes))
    }

    pub(crate) fn from_sizes_unchecked(mut sizes: Vec<usize>) -> Self {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Self { sizes }
    }

    /// The empty profile (zero blocks, `n = 0`).
    pub fn empty() -> Self {
        Self { sizes: Vec::new() }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Size of the ground set.
    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Number of blocks `k`.
    pub fn parts(&self) -> usize {
        self.sizes.len()
    }

    /// Block size -> how many blocks have that size.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &s in &self.sizes {
            *out.entry(s).or_insert(0) += 1;
        }
        out
    }

    pub fn min_part(&self) -> Option<usize> {
        self.sizes.last().copied()
    }

    /// Number of partitions with this profile; see [`profile_count`].
    pub fn count(&self) -> BigUint {
        profile_count(self)
    }

    /// Every distinct ordering of the block sizes, in lexicographic order.
    pub fn orderings(&self) -> Vec<Vec<usize>> {
        let mut current: Vec<usize> = self.sizes.iter().rev().copied().collect();
        let mut out = vec![current.clone()];
        while next_permutation(&mut current) {
            out.push(current.clone());
        }
        out
    }
}

impl fmt::Display for PartitionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.sizes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// `n! / (prod_i l_i! * prod_m r_m!)`, the number of partitions of an
/// `n`-set whose block sizes are exactly the profile; `r_m` is the number of
/// blocks of size `m`.
pub fn profile_count(profile: &PartitionProfile) -> BigUint {
    let mut denom = BigUint::one();
    for &l in profile.sizes() {
        denom *= factorial(l);
    }
    for &r in profile.multiplicities().values() {
        denom *= factorial(r);
    }
    factorial(profile.n()) / denom
}

/// All profiles of `n` (integer partitions), in reverse lexicographic order.
pub fn profiles(n: usize) -> Vec<PartitionProfile> {
    profiles_with_min_part(n, 1)
}

/// Profiles of `n` whose blocks all have size at least `min_part`.
pub fn profiles_with_min_part(n: usize, min_part: usize) -> Vec<PartitionProfile> {
    let min_part = min_part.max(1);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    collect_profiles(n, n, min_part, &mut stack, &mut out);
    out
}

fn collect_profiles(
    remaining: usize,
    max_part: usize,
    min_part: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<PartitionProfile>,
) {
    if remaining == 0 {
        out.push(PartitionProfile {
            sizes: stack.clone(),
        });
        return;
    }
    for part in (min_part..=max_part.min(remaining)).rev() {
        stack.push(part);
        collect_profiles(remaining - part, part, min_part, stack, out);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(sizes: &[usize]) -> u64 {
        let c = profile_count(&PartitionProfile::new(sizes.to_vec()).unwrap());
        u64::try_from(c).unwrap()
    }

    #[test]
    fn small_profile_counts() {
        assert_eq!(count(&[1, 1, 1]), 1);
        assert_eq!(count(&[2, 1]), 3);
        assert_eq!(count(&[1, 2]), 3);
        assert_eq!(count(&[2, 2]), 3);
        assert_eq!(count(&[]), 1);
        assert_eq!(count(&[3, 2, 2, 1]), 8 * 7 * 6 * 5 * 4 * 3 * 2 / (6 * 2 * 2 * 2));
    }

    #[test]
    fn zero_sizes_are_rejected() {
        assert!(PartitionProfile::new(vec![2, 0]).is_err());
    }

    #[test]
    fn storage_is_non_increasing() {
        let p = PartitionProfile::new(vec![1, 3, 2, 3]).unwrap();
        assert_eq!(p.sizes(), &[3, 3, 2, 1]);
        assert_eq!(p.n(), 9);
        assert_eq!(p.parts(), 4);
        assert_eq!(p.to_string(), "(3,3,2,1)");
    }

    #[test]
    fn integer_partitions_of_small_n() {
        assert_eq!(profiles(0), vec![PartitionProfile::empty()]);
        let p5: Vec<String> = profiles(5).iter().map(|p| p.to_string()).collect();
        assert_eq!(
            p5,
            ["(5)", "(4,1)", "(3,2)", "(3,1,1)", "(2,2,1)", "(2,1,1,1)", "(1,1,1,1,1)"]
        );
        assert_eq!(profiles(10).len(), 42);
        assert_eq!(profiles_with_min_part(6, 2).len(), 4);
        assert!(profiles_with_min_part(1, 2).is_empty());
    }

    #[test]
    fn orderings_are_distinct_permutations() {
        let p = PartitionProfile::new(vec![2, 1, 1]).unwrap();
        assert_eq!(p.orderings(), vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
        assert_eq!(PartitionProfile::empty().orderings(), vec![Vec::<usize>::new()]);
    }
}
