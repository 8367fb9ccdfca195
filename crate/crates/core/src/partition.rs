use std::collections::HashMap;
use std::hash::Hash;

/// A partition of `0..len` into blocks, stored in canonical form: blocks are
/// numbered in order of their smallest member. Two partitions of the same
/// elements are equal iff they group the elements identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block: Vec<u32>,
    count: usize,
}

impl Partition {
    /// Groups elements with equal labels.
    pub fn from_labels<L: Hash + Eq>(labels: impl IntoIterator<Item = L>) -> Self {
        let mut ids: HashMap<L, u32> = HashMap::new();
        let block = labels
            .into_iter()
            .map(|l| {
                let next = ids.len() as u32;
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Partition {
            block,
            count: ids.len(),
        }
    }

    pub fn discrete(len: usize) -> Self {
        Self::from_labels(0..len)
    }

    pub fn len(&self) -> usize {
        self.block.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.count
    }

    pub fn block_of(&self, i: usize) -> u32 {
        self.block[i]
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.block[i] == self.block[j]
    }

    pub fn blocks(&self) -> &[u32] {
        &self.block
    }

    /// Members of each block, in increasing order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (i, b) in self.block.iter().enumerate() {
            out[*b as usize].push(i);
        }
        out
    }

    /// The first element at which two partitions disagree, if any: an element
    /// whose block differs in membership.
    pub fn first_difference(&self, other: &Partition) -> Option<usize> {
        if self.len() != other.len() {
            return Some(self.len().min(other.len()));
        }
        self.block
            .iter()
            .zip(&other.block)
            .position(|(a, b)| a != b)
    }
}
