//! Fixed-width bit masks over a universe of dense element ids.

use std::cmp::Ordering;
use std::fmt;

const BITS: usize = 64;

fn block_count(width: usize) -> usize {
    width.div_ceil(BITS)
}

/// A subset of a universe with elements `0..width`, one bit per element.
///
/// Masks of equal width order as unsigned integers; this is the canonical
/// order used for sets of masks throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    width: usize,
    blocks: Vec<u64>,
}

impl SubsetMask {
    pub fn empty(width: usize) -> Self {
        SubsetMask {
            width,
            blocks: vec![0; block_count(width)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut blocks = vec![u64::MAX; block_count(width)];
        if width % BITS != 0 {
            if let Some(last) = blocks.last_mut() {
                *last = (1u64 << (width % BITS)) - 1;
            }
        }
        SubsetMask { width, blocks }
    }

    pub fn from_ids(width: usize, ids: &[usize]) -> Result<Self, crate::CoreError> {
        let mut mask = SubsetMask::empty(width);
        for &id in ids {
            if id >= width {
                return Err(crate::CoreError::InvalidUniverse(format!(
                    "element id {id} out of range for width {width}"
                )));
            }
            mask.insert(id);
        }
        Ok(mask)
    }

    /// Mask from the low bits of a single word; requires `width <= 64`.
    pub fn from_word(width: usize, word: u64) -> Self {
        debug_assert!(width <= BITS);
        let mut mask = SubsetMask::empty(width);
        if !mask.blocks.is_empty() {
            mask.blocks[0] = word;
        }
        mask
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn contains(&self, id: usize) -> bool {
        debug_assert!(id < self.width);
        self.blocks[id / BITS] & (1 << (id % BITS)) != 0
    }

    pub fn insert(&mut self, id: usize) {
        debug_assert!(id < self.width);
        self.blocks[id / BITS] |= 1 << (id % BITS);
    }

    pub fn remove(&mut self, id: usize) {
        debug_assert!(id < self.width);
        self.blocks[id / BITS] &= !(1 << (id % BITS));
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for (o, f) in out
            .blocks
            .iter_mut()
            .zip(SubsetMask::full(self.width).blocks)
        {
            *o = !*o & f;
        }
        out
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & b == 0)
    }

    pub fn ids(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.count());
        for (i, &block) in self.blocks.iter().enumerate() {
            let mut b = block;
            while b != 0 {
                let bit = b.trailing_zeros() as usize;
                out.push(i * BITS + bit);
                b &= b - 1;
            }
        }
        out
    }

    /// The single backing word; only valid when `width <= 64`.
    pub fn word(&self) -> u64 {
        debug_assert!(self.width <= BITS);
        self.blocks.first().copied().unwrap_or(0)
    }

    /// Overwrites the mask from a word in place; only valid when `width <= 64`.
    pub fn set_word(&mut self, word: u64) {
        debug_assert!(self.width <= BITS);
        if let Some(b) = self.blocks.first_mut() {
            *b = word;
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.width, other.width);
        SubsetMask {
            width: self.width,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Visits every subset of `self` in ascending canonical order.
    ///
    /// The visitor gets a reused buffer, so no allocation happens per subset.
    pub fn for_each_subset(&self, mut f: impl FnMut(&SubsetMask)) {
        let mut sub = SubsetMask::empty(self.width);
        loop {
            f(&sub);
            if !next_subset_in_place(&mut sub, self) {
                return;
            }
        }
    }

    /// Like [`for_each_subset`](Self::for_each_subset) but stops early when the
    /// visitor returns `true`; returns whether it stopped early.
    pub fn any_subset(&self, mut f: impl FnMut(&SubsetMask) -> bool) -> bool {
        let mut sub = SubsetMask::empty(self.width);
        loop {
            if f(&sub) {
                return true;
            }
            if !next_subset_in_place(&mut sub, self) {
                return false;
            }
        }
    }

    /// Owned iterator over all subsets in ascending order.
    pub fn subsets(&self) -> Vec<SubsetMask> {
        let mut out = Vec::new();
        self.for_each_subset(|s| out.push(s.clone()));
        out
    }
}

/// Advances `sub` to the next subset of `of` in ascending order.
/// Returns false when wrapping back to the empty set.
fn next_subset_in_place(sub: &mut SubsetMask, of: &SubsetMask) -> bool {
    debug_assert_eq!(sub.width, of.width);
    // next = (sub - of) & of, with multi-word borrow
    let mut borrow = false;
    let mut nonzero = false;
    for (s, &m) in sub.blocks.iter_mut().zip(&of.blocks) {
        let (r1, b1) = s.overflowing_sub(m);
        let (r2, b2) = r1.overflowing_sub(borrow as u64);
        *s = r2 & m;
        borrow = b1 || b2;
        nonzero |= *s != 0;
    }
    nonzero
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| self.blocks.iter().rev().cmp(other.blocks.iter().rev()))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, id) in self.ids().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}/{}", self.width)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_ascend_and_cover() {
        let m = SubsetMask::from_ids(5, &[0, 2, 4]).unwrap();
        let subs = m.subsets();
        assert_eq!(subs.len(), 8);
        for w in subs.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(subs[0], SubsetMask::empty(5));
        assert_eq!(subs[7], m);
    }

    #[test]
    fn subsets_of_empty() {
        let m = SubsetMask::empty(4);
        assert_eq!(m.subsets(), vec![SubsetMask::empty(4)]);
        let z = SubsetMask::empty(0);
        assert_eq!(z.subsets().len(), 1);
    }

    #[test]
    fn wide_masks_cross_block() {
        let m = SubsetMask::from_ids(130, &[0, 63, 64, 129]).unwrap();
        assert_eq!(m.count(), 4);
        assert_eq!(m.ids(), vec![0, 63, 64, 129]);
        assert!(m.contains(64));
        assert!(!m.contains(65));
        let c = m.complement();
        assert_eq!(c.count(), 126);
        assert!(m.is_disjoint(&c));
        assert_eq!(m.union(&c), SubsetMask::full(130));
    }

    #[test]
    fn canonical_order_is_numeric() {
        let a = SubsetMask::from_ids(6, &[0, 1]).unwrap(); // 3
        let b = SubsetMask::from_ids(6, &[2]).unwrap(); // 4
        let c = SubsetMask::from_ids(6, &[0, 2]).unwrap(); // 5
        assert!(a < b && b < c);
    }
}
