//! Named block partitions of tensor modes.
//!
//! A block spec records, per mode, a list of contiguous block sizes that
//! covers the index range. Blocks of size 0 are allowed (an appended
//! summand of width 0 still occupies a logical block position).

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BlockSpec3 {
    sizes: [Vec<usize>; 3],
}

impl BlockSpec3 {
    pub fn new(sizes: [Vec<usize>; 3]) -> Self {
        BlockSpec3 { sizes }
    }

    /// One block per mode covering everything.
    pub fn single(dims: [usize; 3]) -> Self {
        BlockSpec3 {
            sizes: [vec![dims[0]], vec![dims[1]], vec![dims[2]]],
        }
    }

    pub fn count(&self, mode: usize) -> usize {
        self.sizes[mode].len()
    }

    pub fn size(&self, mode: usize, block: usize) -> usize {
        self.sizes[mode][block]
    }

    pub fn total(&self, mode: usize) -> usize {
        self.sizes[mode].iter().sum()
    }

    pub fn sizes(&self, mode: usize) -> &[usize] {
        &self.sizes[mode]
    }

    /// Index range of a block.
    pub fn range(&self, mode: usize, block: usize) -> Result<std::ops::Range<usize>, CoreError> {
        if block >= self.count(mode) {
            return Err(CoreError::UnknownBlock(block, self.count(mode)));
        }
        let lo: usize = self.sizes[mode][..block].iter().sum();
        Ok(lo..lo + self.sizes[mode][block])
    }

    /// Append one block per mode.
    pub fn append(&self, extra: [usize; 3]) -> BlockSpec3 {
        let mut sizes = self.sizes.clone();
        for m in 0..3 {
            sizes[m].push(extra[m]);
        }
        BlockSpec3 { sizes }
    }

    /// Product structure: block `(a, b)` of the product has size
    /// `size(a)·size(b)`, ordered with the first factor as the major index.
    pub fn kron(&self, other: &BlockSpec3) -> BlockSpec3 {
        let mut sizes: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for m in 0..3 {
            for &x in &self.sizes[m] {
                for &y in &other.sizes[m] {
                    sizes[m].push(x * y);
                }
            }
        }
        BlockSpec3 { sizes }
    }

    pub fn remove_block(&self, mode_blocks: [usize; 3]) -> BlockSpec3 {
        let mut sizes = self.sizes.clone();
        for m in 0..3 {
            sizes[m].remove(mode_blocks[m]);
        }
        BlockSpec3 { sizes }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_cover_and_are_disjoint() {
        let b = BlockSpec3::new([vec![3, 0, 2], vec![5], vec![1, 1]]);
        assert_eq!(b.range(0, 0).unwrap(), 0..3);
        assert_eq!(b.range(0, 1).unwrap(), 3..3);
        assert_eq!(b.range(0, 2).unwrap(), 3..5);
        assert_eq!(b.total(0), 5);
        assert!(b.range(0, 3).is_err());
    }

    #[test]
    fn kron_ordering() {
        let a = BlockSpec3::new([vec![2, 1], vec![2, 1], vec![2, 1]]);
        let p = a.kron(&a);
        assert_eq!(p.sizes(0), &[4, 2, 2, 1]);
    }
}
