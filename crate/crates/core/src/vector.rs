use std::fmt;
use std::ops::BitXor;

use crate::error::{Error, Result};

/// Largest supported ambient dimension; vectors pack into one machine word.
pub const MAX_DIM: usize = 64;

/// A point of F₂ⁿ, 1 ≤ n ≤ 64, bit-packed.
///
/// Coordinate `j` (1-based, the j-th character of the printed bitstring) is
/// stored at bit `j-1` of `bits`. Addition is bitwise XOR, so `x + x = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    ambient_dim: usize,
    bits: u64,
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::AmbientDim { n });
    }
    Ok(())
}

fn dim_mask(n: usize) -> u64 {
    if n == MAX_DIM {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Gf2Vector {
    /// The zero vector of F₂ⁿ.
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Gf2Vector { ambient_dim: n, bits: 0 })
    }

    /// Builds a vector from bit-packed coordinates; bits beyond `n` must be clear.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_dim(n)?;
        if bits & !dim_mask(n) != 0 {
            return Err(Error::AmbientDim { n });
        }
        Ok(Gf2Vector { ambient_dim: n, bits })
    }

    /// The standard basis vector with a 1 in coordinate `coord` (0-based).
    pub fn unit(n: usize, coord: usize) -> Result<Self> {
        check_dim(n)?;
        assert!(coord < n, "coordinate {coord} out of range for dimension {n}");
        Ok(Gf2Vector { ambient_dim: n, bits: 1u64 << coord })
    }

    /// Parses a bitstring such as `"111 111 100"` into a vector of F₂ⁿ.
    ///
    /// Internal spaces are stripped; the leftmost character is coordinate 1.
    /// Errors on wrong length or any character other than '0' and '1'.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        check_dim(n)?;
        let mut bits = 0u64;
        let mut count = 0usize;
        for ch in text.chars() {
            match ch {
                ' ' => continue,
                '0' | '1' => {
                    if count == MAX_DIM {
                        return Err(Error::BitstringLength { expected: n, found: count + 1 });
                    }
                    if ch == '1' {
                        bits |= 1u64 << count;
                    }
                    count += 1;
                }
                other => return Err(Error::BitstringChar { ch: other }),
            }
        }
        if count != n {
            return Err(Error::BitstringLength { expected: n, found: count });
        }
        Ok(Gf2Vector { ambient_dim: n, bits })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coordinate `j` (0-based).
    pub fn coord(&self, j: usize) -> bool {
        assert!(j < self.ambient_dim);
        (self.bits >> j) & 1 == 1
    }

    /// Renders the vector as a bitstring, coordinate 1 first.
    pub fn bitstring(&self) -> String {
        (0..self.ambient_dim)
            .map(|j| if self.coord(j) { '1' } else { '0' })
            .collect()
    }
}

impl BitXor for Gf2Vector {
    type Output = Gf2Vector;

    fn bitxor(self, rhs: Gf2Vector) -> Gf2Vector {
        assert_eq!(
            self.ambient_dim, rhs.ambient_dim,
            "cannot add vectors of different ambient dimensions"
        );
        Gf2Vector { ambient_dim: self.ambient_dim, bits: self.bits ^ rhs.bits }
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bitstring())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({})", self.bitstring())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spaced_bitstring() {
        let w1 = Gf2Vector::parse("111 111 100", 9).unwrap();
        assert_eq!(w1.bitstring(), "111111100");
        assert_eq!(w1.bits(), 0b001111111);
    }

    #[test]
    fn parses_zero_vector() {
        let z = Gf2Vector::parse("000 000 000", 9).unwrap();
        assert!(z.is_zero());
        assert_eq!(z, Gf2Vector::zero(9).unwrap());
    }

    #[test]
    fn rejects_wrong_length() {
        assert_eq!(
            Gf2Vector::parse("101", 4),
            Err(Error::BitstringLength { expected: 4, found: 3 })
        );
    }

    #[test]
    fn rejects_bad_character() {
        assert_eq!(Gf2Vector::parse("10x1", 4), Err(Error::BitstringChar { ch: 'x' }));
    }

    #[test]
    fn xor_is_involution() {
        let a = Gf2Vector::parse("1010", 4).unwrap();
        let b = Gf2Vector::parse("0110", 4).unwrap();
        assert_eq!(a ^ a, Gf2Vector::zero(4).unwrap());
        assert_eq!((a ^ b) ^ b, a);
    }

    #[test]
    fn leftmost_character_is_coordinate_one() {
        let v = Gf2Vector::parse("100", 3).unwrap();
        assert!(v.coord(0));
        assert!(!v.coord(1));
        assert!(!v.coord(2));
        assert_eq!(v, Gf2Vector::unit(3, 0).unwrap());
    }

    #[test]
    fn dimension_bounds() {
        assert!(Gf2Vector::zero(0).is_err());
        assert!(Gf2Vector::zero(65).is_err());
        assert!(Gf2Vector::zero(64).is_ok());
        let ones = "1".repeat(64);
        let v = Gf2Vector::parse(&ones, 64).unwrap();
        assert_eq!(v.bits(), u64::MAX);
    }
}
