use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor};

/// A subset of a point set, as a k-bit mask over element indices.
///
/// Bit `i` is set iff element `i` of the underlying `PointSet` is in the
/// subset. XOR of masks is the symmetric difference of the subsets, AND is
/// intersection, OR is union.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    universe: usize,
    bits: u64,
}

impl SubsetMask {
    pub fn empty(universe: usize) -> Self {
        assert!(universe <= 64, "universe size {universe} exceeds 64");
        SubsetMask { universe, bits: 0 }
    }

    pub fn full(universe: usize) -> Self {
        assert!(universe <= 64, "universe size {universe} exceeds 64");
        let bits = if universe == 64 { u64::MAX } else { (1u64 << universe) - 1 };
        SubsetMask { universe, bits }
    }

    pub fn from_bits(universe: usize, bits: u64) -> Self {
        let mut m = SubsetMask::full(universe);
        m.bits &= bits;
        m
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut m = SubsetMask::empty(universe);
        for i in indices {
            assert!(i < universe, "index {i} out of range for universe {universe}");
            m.bits |= 1u64 << i;
        }
        m
    }

    pub fn singleton(universe: usize, index: usize) -> Self {
        Self::from_indices(universe, [index])
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.universe && (self.bits >> index) & 1 == 1
    }

    pub fn cardinality(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn complement(&self) -> Self {
        SubsetMask { universe: self.universe, bits: !self.bits & Self::full(self.universe).bits }
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint_from(&self, other: &SubsetMask) -> bool {
        self.bits & other.bits == 0
    }

    /// Element indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        let universe = self.universe;
        (0..universe).filter(move |&i| (self.bits >> i) & 1 == 1)
    }
}

macro_rules! mask_op {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for SubsetMask {
            type Output = SubsetMask;

            fn $method(self, rhs: SubsetMask) -> SubsetMask {
                assert_eq!(self.universe, rhs.universe, "mask universes differ");
                SubsetMask { universe: self.universe, bits: self.bits $op rhs.bits }
            }
        }
    };
}

mask_op!(BitXor, bitxor, ^);
mask_op!(BitAnd, bitand, &);
mask_op!(BitOr, bitor, |);

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.indices().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetMask({}/{})", self, self.universe)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_is_symmetric_difference() {
        let a = SubsetMask::from_indices(8, [0, 1, 2, 5]);
        let b = SubsetMask::from_indices(8, [2, 3, 5]);
        let d = a ^ b;
        assert_eq!(d, SubsetMask::from_indices(8, [0, 1, 3]));
        assert_eq!(d.cardinality(), 3);
    }

    #[test]
    fn complement_and_subset() {
        let a = SubsetMask::from_indices(5, [0, 4]);
        assert_eq!(a.complement(), SubsetMask::from_indices(5, [1, 2, 3]));
        assert!(a.is_subset_of(&SubsetMask::full(5)));
        assert!(SubsetMask::empty(5).is_subset_of(&a));
        assert!(a.is_disjoint_from(&a.complement()));
    }

    #[test]
    fn indices_ascending() {
        let a = SubsetMask::from_indices(10, [7, 2, 9]);
        assert_eq!(a.indices().collect::<Vec<_>>(), vec![2, 7, 9]);
        assert_eq!(a.to_string(), "{2,7,9}");
    }
}
