use std::fmt;

use crate::combinatorics::PartitionProfile;
use crate::error::{Error, Result};

/// Largest ground set [`enumerate_set_partitions`] accepts by default
/// (B(12) = 4 213 597 partitions).
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// A partition of `{1, ..., n}` into non-empty disjoint blocks.
///
/// Blocks are stored sorted internally and ordered by their smallest element,
/// so two equal partitions always compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalizes a list of blocks over `{1, ..., n}`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &e in block.iter() {
                if e == 0 || e > n {
                    return Err(Error::InvalidPartition(format!(
                        "element {e} outside 1..={n}"
                    )));
                }
                if seen[e] {
                    return Err(Error::InvalidPartition(format!(
                        "element {e} appears twice"
                    )));
                }
                seen[e] = true;
            }
        }
        if let Some(missing) = (1..=n).find(|&e| !seen[e]) {
            return Err(Error::InvalidPartition(format!(
                "element {missing} not covered"
            )));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { n, blocks })
    }

    /// Builds the partition encoded by a restricted growth string
    /// (`labels[i]` is the block index of element `i + 1`).
    fn from_labels(labels: &[usize], num_blocks: usize) -> Self {
        let mut blocks = vec![Vec::new(); num_blocks];
        for (i, &b) in labels.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        Self {
            n: labels.len(),
            blocks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().map(Vec::len)
    }

    /// The multiset of block sizes.
    pub fn profile(&self) -> PartitionProfile {
        PartitionProfile::from_sizes_unchecked(self.block_sizes().collect())
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("{")?;
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

/// Streaming enumeration of all set partitions of `{1, ..., n}` in
/// lexicographic order of their restricted growth strings.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    labels: Vec<usize>,
    // prefix_max[i] = max(labels[0..=i])
    prefix_max: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    fn new(n: usize) -> Self {
        Self {
            labels: vec![0; n],
            prefix_max: vec![0; n],
            done: false,
        }
    }

    fn advance(&mut self) {
        let n = self.labels.len();
        // Rightmost position that can still grow: labels[i] <= prefix_max[i - 1].
        let Some(i) = (1..n)
            .rev()
            .find(|&i| self.labels[i] <= self.prefix_max[i - 1])
        else {
            self.done = true;
            return;
        };
        self.labels[i] += 1;
        self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
        for j in i + 1..n {
            self.labels[j] = 0;
            self.prefix_max[j] = self.prefix_max[i];
        }
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let num_blocks = self.prefix_max.last().map_or(0, |&m| m + 1);
        let current = SetPartition::from_labels(&self.labels, num_blocks);
        if self.labels.is_empty() {
            self.done = true;
        } else {
            self.advance();
        }
        Some(current)
    }
}

/// All partitions of `{1, ..., n}`, refusing `n` above [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_set_partitions(n: usize) -> Result<SetPartitions> {
    enumerate_set_partitions_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_set_partitions_with_cap(n: usize, cap: usize) -> Result<SetPartitions> {
    if n > cap {
        return Err(Error::EnumerationTooLarge { n, cap });
    }
    Ok(SetPartitions::new(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_ground_set_has_one_partition() {
        let all: Vec<_> = enumerate_set_partitions(0).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].blocks().is_empty());
    }

    #[test]
    fn three_elements() {
        let all: Vec<_> = enumerate_set_partitions(3).unwrap().collect();
        assert_eq!(all.len(), 5);
        assert_eq!(all[0].to_string(), "{{1,2,3}}");
        assert_eq!(all[4].to_string(), "{{1}, {2}, {3}}");
    }

    #[test]
    fn four_elements_pair_pairs() {
        let all: Vec<_> = enumerate_set_partitions(4).unwrap().collect();
        assert_eq!(all.len(), 15);
        let pairs = all
            .iter()
            .filter(|p| p.profile().sizes() == [2, 2])
            .count();
        assert_eq!(pairs, 3);
    }

    #[test]
    fn partitions_are_distinct_and_valid() {
        let all: Vec<_> = enumerate_set_partitions(6).unwrap().collect();
        assert_eq!(all.len(), 203);
        let unique: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(unique.len(), all.len());
        for p in &all {
            let rebuilt = SetPartition::new(6, p.blocks().to_vec()).unwrap();
            assert_eq!(&rebuilt, p);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_set_partitions(13).unwrap_err(),
            Error::EnumerationTooLarge { n: 13, cap: 12 }
        );
        assert!(enumerate_set_partitions_with_cap(13, 13).is_ok());
    }

    #[test]
    fn rejects_bad_blocks() {
        assert!(SetPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(SetPartition::new(2, vec![vec![1, 2], vec![]]).is_err());
        assert!(SetPartition::new(2, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn canonical_block_order() {
        let p = SetPartition::new(4, vec![vec![4, 2], vec![3, 1]]).unwrap();
        assert_eq!(p.blocks(), &[vec![1, 3], vec![2, 4]]);
    }
}
