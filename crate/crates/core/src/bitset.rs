//! Fixed-capacity bitsets over `u64` blocks.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitset {
    len: usize,
    blocks: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset { len, blocks: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Bitset { len, blocks: vec![!0; len.div_ceil(64)] };
        s.trim();
        s
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut s = Self::new(len);
        s.insert(i);
        s
    }

    /// Capacity (number of addressable bits).
    pub fn capacity(&self) -> usize {
        self.len
    }

    fn trim(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let (b, m) = (i / 64, 1u64 << (i % 64));
        let fresh = self.blocks[b] & m == 0;
        self.blocks[b] |= m;
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        if i >= self.len {
            return false;
        }
        let (b, m) = (i / 64, 1u64 << (i % 64));
        let had = self.blocks[b] & m != 0;
        self.blocks[b] &= !m;
        had
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn clear(&mut self) {
        self.blocks.iter_mut().for_each(|b| *b = 0);
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn union_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    pub fn is_subset(&self, other: &Bitset) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Bitset) -> bool {
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    /// Moves every bit `i` to `i + 1`, dropping the top bit.
    pub fn shift_up(&mut self) {
        let mut carry = 0;
        for b in self.blocks.iter_mut() {
            let next = *b >> 63;
            *b = (*b << 1) | carry;
            carry = next;
        }
        self.trim();
    }

    /// Moves every bit `i` to `i - 1`, dropping bit 0.
    pub fn shift_down(&mut self) {
        let mut carry = 0;
        for b in self.blocks.iter_mut().rev() {
            let next = *b & 1;
            *b = (*b >> 1) | (carry << 63);
            carry = next;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let mut rest = block;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let t = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(bi * 64 + t)
            })
        })
    }
}

impl FromIterator<usize> for Bitset {
    /// Collects into a bitset just large enough for the largest element.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let items: Vec<usize> = iter.into_iter().collect();
        let len = items.iter().max().map_or(0, |m| m + 1);
        let mut s = Bitset::new(len);
        for i in items {
            s.insert(i);
        }
        s
    }
}
