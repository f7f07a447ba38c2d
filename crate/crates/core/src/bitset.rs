//! Dense bitsets over a fixed universe, backed by `u64` blocks.
//!
//! Used for adjacency rows, solver edge sets and partition cells. The
//! universe size is fixed at construction; binary operations require both
//! operands to share it.

use std::fmt;

const BLOCK_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl BitSet {
    /// Empty set over `{0, .., universe-1}`.
    pub fn new(universe: usize) -> Self {
        BitSet {
            universe,
            blocks: vec![0; universe.div_ceil(BLOCK_BITS)],
        }
    }

    /// Full set over `{0, .., universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut s = BitSet::new(universe);
        for b in s.blocks.iter_mut() {
            *b = u64::MAX;
        }
        s.clear_tail();
        s
    }

    pub fn from_iter(universe: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = BitSet::new(universe);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.universe);
        self.blocks[i / BLOCK_BITS] |= 1 << (i % BLOCK_BITS);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.universe);
        self.blocks[i / BLOCK_BITS] &= !(1 << (i % BLOCK_BITS));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.universe);
        (self.blocks[i / BLOCK_BITS] >> (i % BLOCK_BITS)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Index of the lowest set bit.
    pub fn first(&self) -> Option<usize> {
        for (i, &b) in self.blocks.iter().enumerate() {
            if b != 0 {
                return Some(i * BLOCK_BITS + b.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(i * BLOCK_BITS + t)
            })
        })
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .any(|(a, b)| a & b != 0)
    }

    pub fn intersection_len(&self, other: &BitSet) -> usize {
        debug_assert_eq!(self.universe, other.universe);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    fn clear_tail(&mut self) {
        let tail = self.universe % BLOCK_BITS;
        if tail != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_contains() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert!(!s.contains(1));
        assert_eq!(s.len(), 3);
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 129]);
    }

    #[test]
    fn full_respects_universe() {
        let s = BitSet::full(70);
        assert_eq!(s.len(), 70);
        assert_eq!(s.first(), Some(0));
    }

    #[test]
    fn set_operations() {
        let a = BitSet::from_iter(10, [1, 3, 5]);
        let b = BitSet::from_iter(10, [3, 4]);
        assert!(a.intersects(&b));
        assert_eq!(a.intersection_len(&b), 1);
        assert!(!BitSet::from_iter(10, [1, 5]).intersects(&b));
        assert!(BitSet::from_iter(10, [3]).is_subset_of(&a));
        let mut c = a.clone();
        c.difference_with(&b);
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![1, 5]);
    }
}
