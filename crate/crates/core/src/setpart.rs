use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of `{1, …, d}` into disjoint nonempty blocks.
///
/// Stored canonically: every block sorted ascending, blocks ordered by their
/// minimum element. Two set partitions are equal iff they have the same blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    d: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(d: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; d + 1];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidSetPartition("empty block".into()));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x == 0 || x > d {
                    return Err(Error::InvalidSetPartition(format!("point {x} outside 1..={d}")));
                }
                if seen[x] {
                    return Err(Error::InvalidSetPartition(format!("point {x} appears twice")));
                }
                seen[x] = true;
            }
        }
        if let Some(missing) = (1..=d).find(|&x| !seen[x]) {
            return Err(Error::InvalidSetPartition(format!("point {missing} not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { d, blocks })
    }

    /// The partition into singletons.
    pub fn discrete(d: usize) -> Self {
        SetPartition { d, blocks: (1..=d).map(|x| vec![x]).collect() }
    }

    /// The partition with a single block (empty when `d == 0`).
    pub fn indiscrete(d: usize) -> Self {
        let blocks = if d == 0 { Vec::new() } else { vec![(1..=d).collect()] };
        SetPartition { d, blocks }
    }

    /// Builds the partition from a block label per point (index 0 is point 1).
    pub(crate) fn from_labels(labels: &[usize]) -> Self {
        let d = labels.len();
        let mut by_label: Vec<Vec<usize>> = vec![Vec::new(); d.max(1)];
        for (i, &l) in labels.iter().enumerate() {
            by_label[l].push(i + 1);
        }
        let mut blocks: Vec<Vec<usize>> = by_label.into_iter().filter(|b| !b.is_empty()).collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { d, blocks }
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing the 1-based point `x`.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }

    /// Block index for every point; entry `i` refers to point `i + 1`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.d];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                labels[x - 1] = i;
            }
        }
        labels
    }

    /// Join in the partition lattice: the finest partition coarser than both.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        if self.d != other.d {
            return Err(Error::DegreeMismatch { left: self.d, right: other.d });
        }
        let mut uf = UnionFind::new(self.d);
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            for w in b.windows(2) {
                uf.union(w[0] - 1, w[1] - 1);
            }
        }
        Ok(uf.into_set_partition())
    }

    /// True iff every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        if self.d != other.d {
            return false;
        }
        let labels = other.labels();
        self.blocks.iter().all(|b| b.iter().all(|&x| labels[x - 1] == labels[b[0] - 1]))
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Union-find over 0-based points, used for orbit and join computations.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so labels are stable
            if ra < rb {
                self.parent[rb] = ra;
            } else {
                self.parent[ra] = rb;
            }
        }
    }

    pub(crate) fn into_set_partition(mut self) -> SetPartition {
        let n = self.parent.len();
        let labels: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        SetPartition::from_labels(&labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalizes_block_order() {
        let p = SetPartition::new(4, vec![vec![4, 3], vec![2, 1]]).unwrap();
        assert_eq!(p.blocks(), &[vec![1, 2], vec![3, 4]]);
        assert_eq!(p.to_string(), "{{1,2},{3,4}}");
    }

    #[test]
    fn rejects_bad_blocks() {
        assert!(SetPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2, 3], vec![]]).is_err());
        assert!(SetPartition::new(2, vec![vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn join_merges_overlaps() {
        let a = SetPartition::new(5, vec![vec![1, 2], vec![3], vec![4, 5]]).unwrap();
        let b = SetPartition::new(5, vec![vec![1], vec![2, 3], vec![4], vec![5]]).unwrap();
        let j = a.join(&b).unwrap();
        assert_eq!(j.blocks(), &[vec![1, 2, 3], vec![4, 5]]);
        assert!(a.refines(&j) && b.refines(&j));
        assert!(!j.refines(&a));
    }
}
