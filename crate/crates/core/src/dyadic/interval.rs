use std::ops::Range;

use crate::error::{Error, Result};

/// A dyadic subinterval `[index·2^-level, (index+1)·2^-level)` of `[0,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicInterval {
    level: usize,
    index: usize,
}

impl DyadicInterval {
    pub fn new(level: usize, index: usize) -> Result<Self> {
        if level >= usize::BITS as usize - 1 || index >= 1usize << level {
            return Err(Error::OutOfRange(format!("dyadic interval (level {level}, index {index})")));
        }
        Ok(Self { level, index })
    }

    pub fn unit() -> Self {
        Self { level: 0, index: 0 }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn len(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    pub fn start(&self) -> f64 {
        self.index as f64 * self.len()
    }

    pub fn end(&self) -> f64 {
        (self.index + 1) as f64 * self.len()
    }

    /// `I^-`, the left half.
    pub fn left(&self) -> Self {
        Self { level: self.level + 1, index: 2 * self.index }
    }

    /// `I^+`, the right half.
    pub fn right(&self) -> Self {
        Self { level: self.level + 1, index: 2 * self.index + 1 }
    }

    pub fn parent(&self) -> Option<Self> {
        (self.level > 0).then(|| Self { level: self.level - 1, index: self.index / 2 })
    }

    /// Ancestor at `level` (or `self` when `level == self.level`).
    pub fn ancestor(&self, level: usize) -> Option<Self> {
        (level <= self.level).then(|| Self { level, index: self.index >> (self.level - level) })
    }

    /// True when `other ⊆ self`.
    pub fn contains(&self, other: &DyadicInterval) -> bool {
        other.level >= self.level && other.index >> (other.level - self.level) == self.index
    }

    /// Position of `h_I` in the heap-ordered one-variable Haar basis
    /// (slot 0 is the constant function).
    pub fn heap_index(&self) -> usize {
        (1usize << self.level) + self.index
    }

    pub fn from_heap_index(slot: usize) -> Option<Self> {
        if slot == 0 {
            return None;
        }
        let level = (usize::BITS - 1 - slot.leading_zeros()) as usize;
        Some(Self { level, index: slot - (1usize << level) })
    }

    /// Cells covered by this interval on a grid of `2^resolution` cells.
    pub fn cell_range(&self, resolution: usize) -> Range<usize> {
        debug_assert!(self.level <= resolution);
        let width = 1usize << (resolution - self.level);
        self.index * width..(self.index + 1) * width
    }

    /// All intervals of one generation.
    pub fn generation(level: usize) -> impl Iterator<Item = DyadicInterval> {
        (0..1usize << level).map(move |index| DyadicInterval { level, index })
    }
}

/// Generation index `(j1, j2)` of a dyadic rectangle, `|I| = 2^-j1`, `|J| = 2^-j2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenerationIndex {
    pub j1: usize,
    pub j2: usize,
}

impl GenerationIndex {
    pub fn new(j1: usize, j2: usize) -> Self {
        Self { j1, j2 }
    }

    /// Strict componentwise order: both coordinates strictly smaller.
    pub fn strictly_below(&self, other: &GenerationIndex) -> bool {
        self.j1 < other.j1 && self.j2 < other.j2
    }

    pub fn below_or_equal(&self, other: &GenerationIndex) -> bool {
        self.j1 <= other.j1 && self.j2 <= other.j2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicRect {
    pub s: DyadicInterval,
    pub t: DyadicInterval,
}

impl DyadicRect {
    pub fn new(s: DyadicInterval, t: DyadicInterval) -> Self {
        Self { s, t }
    }

    pub fn unit() -> Self {
        Self { s: DyadicInterval::unit(), t: DyadicInterval::unit() }
    }

    pub fn area(&self) -> f64 {
        (-((self.s.level + self.t.level) as f64)).exp2()
    }

    pub fn generation(&self) -> GenerationIndex {
        GenerationIndex::new(self.s.level, self.t.level)
    }

    pub fn contains(&self, other: &DyadicRect) -> bool {
        self.s.contains(&other.s) && self.t.contains(&other.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn children_and_parent() {
        let i = DyadicInterval::new(2, 3).unwrap();
        assert_eq!(i.left(), DyadicInterval::new(3, 6).unwrap());
        assert_eq!(i.right(), DyadicInterval::new(3, 7).unwrap());
        assert_eq!(i.right().parent(), Some(i));
        assert_eq!(DyadicInterval::unit().parent(), None);
        assert!(i.contains(&i.right().right()));
        assert!(!i.left().contains(&i.right()));
        assert_eq!(i.right().left().ancestor(2), Some(i));
    }

    #[test]
    fn heap_index_round_trip() {
        for slot in 1..64 {
            let i = DyadicInterval::from_heap_index(slot).unwrap();
            assert_eq!(i.heap_index(), slot);
        }
        assert!(DyadicInterval::from_heap_index(0).is_none());
    }

    #[test]
    fn rejects_index_out_of_range() {
        assert!(DyadicInterval::new(1, 2).is_err());
    }

    #[test]
    fn cell_ranges() {
        let i = DyadicInterval::new(1, 1).unwrap();
        assert_eq!(i.cell_range(3), 4..8);
        assert_eq!(i.start(), 0.5);
        assert_eq!(i.end(), 1.0);
    }

    #[test]
    fn generation_order() {
        let a = GenerationIndex::new(0, 1);
        let b = GenerationIndex::new(1, 1);
        assert!(!a.strictly_below(&b));
        assert!(a.below_or_equal(&b));
        assert!(GenerationIndex::new(0, 0).strictly_below(&b));
    }
}
