//! Bitmask sets over a carrier of at most [`MAX_POINTS`] indexed elements.

use std::fmt;

/// Hard limit on carrier size for subset arithmetic (bits of the mask).
pub const MAX_POINTS: usize = 128;

/// A subset of `{0, .., n-1}` stored as a bitmask.
///
/// The derived `Ord` (mask value order) is the canonical ordering used for
/// every sorted family of sets in this crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(u128);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> PointSet {
        assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            PointSet(u128::MAX)
        } else {
            PointSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> PointSet {
        assert!(i < MAX_POINTS);
        PointSet(1u128 << i)
    }

    pub fn from_mask(mask: u128) -> PointSet {
        PointSet(mask)
    }

    pub fn mask(self) -> u128 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_POINTS && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_POINTS);
        self.0 |= 1u128 << i;
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn complement(self, n: usize) -> PointSet {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_POINTS).filter(move |&i| self.contains(i))
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = PointSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for i in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
