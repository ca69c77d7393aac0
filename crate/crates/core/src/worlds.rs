use core::fmt;

/// Hard cap on universe size; a world set is one `u32`.
pub const MAX_WORLDS: usize = 32;

/// A subset of the worlds `0..size` of some universe.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldSet(u32);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        WorldSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// All worlds of a universe with `size` worlds.
    pub const fn full(size: usize) -> Self {
        if size >= 32 {
            WorldSet(u32::MAX)
        } else {
            WorldSet((1u32 << size) - 1)
        }
    }

    pub const fn singleton(world: usize) -> Self {
        WorldSet(1 << world)
    }

    pub fn from_worlds<I: IntoIterator<Item = usize>>(worlds: I) -> Self {
        worlds.into_iter().fold(WorldSet::EMPTY, |s, w| s.with(w))
    }

    pub const fn with(self, world: usize) -> Self {
        WorldSet(self.0 | (1 << world))
    }

    pub const fn contains(self, world: usize) -> bool {
        world < 32 && self.0 & (1 << world) != 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn intersection(self, other: WorldSet) -> Self {
        WorldSet(self.0 & other.0)
    }

    pub const fn union(self, other: WorldSet) -> Self {
        WorldSet(self.0 | other.0)
    }

    pub const fn difference(self, other: WorldSet) -> Self {
        WorldSet(self.0 & !other.0)
    }

    /// Complement relative to a universe of `size` worlds.
    pub const fn complement(self, size: usize) -> Self {
        WorldSet(!self.0 & WorldSet::full(size).0)
    }

    pub const fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when the set is neither empty nor all of a `size`-world universe.
    pub const fn is_contingent(self, size: usize) -> bool {
        self.0 != 0 && self.0 != WorldSet::full(size).0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w)
            }
        })
    }

    pub fn first(self) -> Option<usize> {
        self.iter().next()
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn complement_is_an_involution() {
        for size in 1..=5 {
            for bits in 0..(1u32 << size) {
                let s = WorldSet::from_bits(bits);
                assert_eq!(s.complement(size).complement(size), s);
                assert!(s.intersection(s.complement(size)).is_empty());
            }
        }
    }

    #[test]
    fn full_universe_of_32() {
        assert_eq!(WorldSet::full(32).len(), 32);
        assert!(WorldSet::full(32).complement(32).is_empty());
        assert!(!WorldSet::full(32).is_contingent(32));
    }

    #[test]
    fn iterates_in_ascending_order() {
        let s = WorldSet::from_worlds([5, 0, 3]);
        assert_eq!(s.iter().collect::<Vec<_>>(), [0, 3, 5]);
        assert_eq!(alloc::format!("{s}"), "{0,3,5}");
    }
}
