//! Small fixed-capacity bit sets over simple-root indices.
//!
//! A `RootSet` indexes either diagram nodes (level C) or restriction fibers
//! (levels R and Q). Index order is the canonical order everywhere.

use std::fmt;

/// Maximum number of simple roots a diagram may carry.
pub const MAX_ROOTS: usize = 128;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet(u128);

impl RootSet {
    pub const EMPTY: RootSet = RootSet(0);

    pub fn from_bits(bits: u128) -> Self {
        RootSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ROOTS);
        if n == MAX_ROOTS {
            RootSet(u128::MAX)
        } else {
            RootSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_ROOTS);
        RootSet(1u128 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ROOTS && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_ROOTS);
        self.0 |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < MAX_ROOTS {
            self.0 &= !(1u128 << i);
        }
    }

    pub fn with(self, i: usize) -> Self {
        let mut s = self;
        s.insert(i);
        s
    }

    pub fn union(self, other: Self) -> Self {
        RootSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        RootSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        RootSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        !self.is_disjoint(other)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Every subset of `self`, starting from the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Canonical ordering key: by cardinality, then lexicographically by
    /// member indices.
    pub fn canonical_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.iter().collect())
    }
}

impl FromIterator<usize> for RootSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = RootSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl IntoIterator for RootSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Subset enumeration via the `(x - mask) & mask` trick.
pub struct Subsets {
    mask: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = RootSet;
    fn next(&mut self) -> Option<RootSet> {
        let cur = self.next?;
        let succ = cur.wrapping_sub(self.mask) & self.mask;
        self.next = if succ == 0 { None } else { Some(succ) };
        Some(RootSet(cur))
    }
}

/// Sort sets into canonical order and drop duplicates.
pub fn canonicalize(sets: &mut Vec<RootSet>) {
    sets.sort_by_cached_key(|s| s.canonical_key());
    sets.dedup();
}
