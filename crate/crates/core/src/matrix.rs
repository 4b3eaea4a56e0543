use std::fmt;

use crate::error::{Error, Result};
use crate::vector::Gf2Vector;

/// A matrix over F₂ with up to 64 rows and columns.
///
/// Each row is one `u64` word with column `j` at bit `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    row_bits: Vec<u64>,
}

/// Converts a coordinate label (bitstring read as an integer, first
/// coordinate most significant, so "110" = 6) to a bit-packed word with
/// coordinate `i` at bit `i`.
pub fn label_to_bits(label: u32, width: usize) -> u64 {
    let mut bits = 0u64;
    for i in 0..width {
        if (label >> (width - 1 - i)) & 1 == 1 {
            bits |= 1u64 << i;
        }
    }
    bits
}

/// Inverse of [`label_to_bits`].
pub fn bits_to_label(bits: u64, width: usize) -> u32 {
    let mut label = 0u32;
    for i in 0..width {
        label = (label << 1) | ((bits >> i) & 1) as u32;
    }
    label
}

/// Renders a coordinate label as a bitstring, e.g. 6 at width 3 → "110".
/// Width 0 (the sole label of a rank-0 space) renders as "-".
pub fn label_string(label: u32, width: usize) -> String {
    if width == 0 {
        return "-".to_string();
    }
    (0..width)
        .map(|i| if (label >> (width - 1 - i)) & 1 == 1 { '1' } else { '0' })
        .collect()
}

impl Gf2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows <= 64 && cols <= 64, "matrix dimensions exceed 64");
        Gf2Matrix { rows, cols, row_bits: vec![0; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zero(n, n);
        for i in 0..n {
            m.row_bits[i] = 1u64 << i;
        }
        m
    }

    /// Builds a matrix from rows given as bit-packed words (column `j` at bit `j`).
    pub fn from_row_bits(cols: usize, row_bits: Vec<u64>) -> Self {
        assert!(cols <= 64 && row_bits.len() <= 64);
        let mask = if cols == 64 { u64::MAX } else { (1u64 << cols) - 1 };
        let rows = row_bits.len();
        let row_bits = row_bits.into_iter().map(|w| w & mask).collect();
        Gf2Matrix { rows, cols, row_bits }
    }

    /// Builds a matrix from 0/1 entries, row by row. Panics if rows are ragged.
    pub fn from_dense(entries: &[&[u8]]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        let mut m = Gf2Matrix::zero(rows, cols);
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, &e) in row.iter().enumerate() {
                if e != 0 {
                    m.row_bits[i] |= 1u64 << j;
                }
            }
        }
        m
    }

    /// Builds a matrix from columns given as bit-packed words (row `i` at bit `i`).
    pub fn from_col_bits(rows: usize, col_bits: &[u64]) -> Self {
        let mut m = Gf2Matrix::zero(rows, col_bits.len());
        for (j, &col) in col_bits.iter().enumerate() {
            for i in 0..rows {
                if (col >> i) & 1 == 1 {
                    m.row_bits[i] |= 1u64 << j;
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        (self.row_bits[i] >> j) & 1 == 1
    }

    pub fn row_bits(&self, i: usize) -> u64 {
        self.row_bits[i]
    }

    pub fn col_bits(&self, j: usize) -> u64 {
        assert!(j < self.cols);
        let mut col = 0u64;
        for i in 0..self.rows {
            col |= ((self.row_bits[i] >> j) & 1) << i;
        }
        col
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.row_bits[j] |= 1u64 << i;
                }
            }
        }
        t
    }

    pub fn multiply(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Gf2Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            let mut acc = 0u64;
            let mut lhs_row = self.row_bits[i];
            while lhs_row != 0 {
                let k = lhs_row.trailing_zeros() as usize;
                acc ^= rhs.row_bits[k];
                lhs_row &= lhs_row - 1;
            }
            out.row_bits[i] = acc;
        }
        out
    }

    /// Multiplies by a bit-packed vector (coordinate `j` at bit `j`).
    pub fn mul_bits(&self, x: u64) -> u64 {
        let mut out = 0u64;
        for i in 0..self.rows {
            let parity = (self.row_bits[i] & x).count_ones() & 1;
            out |= (parity as u64) << i;
        }
        out
    }

    /// Multiplies by a coordinate label; input width is `cols`, output width `rows`.
    pub fn mul_label(&self, a: u32) -> u32 {
        bits_to_label(self.mul_bits(label_to_bits(a, self.cols)), self.rows)
    }

    pub fn mul_vector(&self, v: &Gf2Vector) -> Gf2Vector {
        assert_eq!(self.cols, v.ambient_dim(), "vector dimension mismatch");
        Gf2Vector::from_bits(self.rows, self.mul_bits(v.bits()))
            .expect("rows <= 64 always yields a valid dimension")
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<u64> = self.row_bits.clone();
        let mut rank = 0;
        for j in 0..self.cols {
            let pivot = (rank..rows.len()).find(|&i| (rows[i] >> j) & 1 == 1);
            if let Some(p) = pivot {
                rows.swap(rank, p);
                for i in 0..rows.len() {
                    if i != rank && (rows[i] >> j) & 1 == 1 {
                        rows[i] ^= rows[rank];
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Gauss-Jordan inverse; errors on non-square or singular input.
    pub fn inverse(&self) -> Result<Gf2Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut work = self.row_bits.clone();
        let mut inv = Gf2Matrix::identity(n).row_bits;
        for j in 0..n {
            let pivot = (j..n).find(|&i| (work[i] >> j) & 1 == 1).ok_or(Error::Singular)?;
            work.swap(j, pivot);
            inv.swap(j, pivot);
            for i in 0..n {
                if i != j && (work[i] >> j) & 1 == 1 {
                    work[i] ^= work[j];
                    inv[i] ^= inv[j];
                }
            }
        }
        Ok(Gf2Matrix { rows: n, cols: n, row_bits: inv })
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.cols {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
        }
        write!(f, "]")
    }
}

/// An affine automorphism candidate `x ↦ Lx + t` of F₂ⁿ.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineMap {
    linear: Gf2Matrix,
    translation: Gf2Vector,
}

impl AffineMap {
    pub fn new(linear: Gf2Matrix, translation: Gf2Vector) -> Result<Self> {
        if !linear.is_square() {
            return Err(Error::NotSquare { rows: linear.rows(), cols: linear.cols() });
        }
        if linear.rows() != translation.ambient_dim() {
            return Err(Error::AmbientDimMismatch {
                expected: linear.rows(),
                found: translation.ambient_dim(),
            });
        }
        Ok(AffineMap { linear, translation })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(AffineMap { linear: Gf2Matrix::identity(n), translation: Gf2Vector::zero(n)? })
    }

    pub fn translation_by(t: Gf2Vector) -> Self {
        AffineMap { linear: Gf2Matrix::identity(t.ambient_dim()), translation: t }
    }

    pub fn linear_part(&self) -> &Gf2Matrix {
        &self.linear
    }

    pub fn translation(&self) -> Gf2Vector {
        self.translation
    }

    pub fn ambient_dim(&self) -> usize {
        self.translation.ambient_dim()
    }

    pub fn apply(&self, x: &Gf2Vector) -> Gf2Vector {
        self.linear.mul_vector(x) ^ self.translation
    }

    pub fn is_invertible(&self) -> bool {
        self.linear.is_invertible()
    }

    /// The inverse automorphism `y ↦ L⁻¹y + L⁻¹t`; errors if the linear part is singular.
    pub fn inverse(&self) -> Result<AffineMap> {
        let linv = self.linear.inverse()?;
        let t = linv.mul_vector(&self.translation);
        Ok(AffineMap { linear: linv, translation: t })
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineMap({:?} + {})", self.linear, self.translation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_round_trip() {
        assert_eq!(label_to_bits(0b110, 3), 0b011);
        assert_eq!(bits_to_label(0b011, 3), 0b110);
        assert_eq!(label_string(6, 3), "110");
        for width in 1..=8 {
            for label in 0..(1u32 << width) {
                assert_eq!(bits_to_label(label_to_bits(label, width), width), label);
            }
        }
    }

    #[test]
    fn identity_multiplication() {
        let id = Gf2Matrix::identity(5);
        let m = Gf2Matrix::from_dense(&[
            &[1, 0, 1, 0, 0],
            &[0, 1, 1, 1, 0],
            &[0, 0, 1, 0, 1],
            &[1, 1, 0, 0, 1],
            &[0, 1, 0, 1, 1],
        ]);
        assert_eq!(id.multiply(&m), m);
        assert_eq!(m.multiply(&id), m);
    }

    #[test]
    fn inverse_known_answer() {
        // A 3x3 pair checked by hand.
        let m_inv = Gf2Matrix::from_dense(&[&[1, 0, 1], &[1, 1, 1], &[0, 1, 1]]);
        let m = m_inv.inverse().unwrap();
        assert_eq!(m, Gf2Matrix::from_dense(&[&[0, 1, 1], &[1, 1, 0], &[1, 1, 1]]));
        assert_eq!(m.multiply(&m_inv), Gf2Matrix::identity(3));
        assert_eq!(m_inv.multiply(&m), Gf2Matrix::identity(3));
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = Gf2Matrix::from_dense(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.inverse(), Err(Error::Singular));
        assert!(!m.is_invertible());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn transpose_involution_and_column_access() {
        let m = Gf2Matrix::from_dense(&[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.col_bits(1), 0b11);
        assert_eq!(Gf2Matrix::from_col_bits(2, &[m.col_bits(0), m.col_bits(1), m.col_bits(2)]), m);
    }

    #[test]
    fn mul_label_matches_columns() {
        let m = Gf2Matrix::from_dense(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1]]);
        // N e1 has label of column 1 = (1,0,1) = "101".
        assert_eq!(m.mul_label(0b100), 0b101);
        assert_eq!(m.mul_label(0b010), 0b010);
        assert_eq!(m.mul_label(0b001), 0b001);
        assert_eq!(m.mul_label(0b110), 0b111);
    }

    #[test]
    fn affine_map_apply_and_inverse() {
        let l = Gf2Matrix::from_dense(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let t = Gf2Vector::parse("101", 3).unwrap();
        let f = AffineMap::new(l, t).unwrap();
        let x = Gf2Vector::parse("110", 3).unwrap();
        let y = f.apply(&x);
        assert_eq!(y.bitstring(), "011");
        let g = f.inverse().unwrap();
        assert_eq!(g.apply(&y), x);
        assert_eq!(g.apply(&f.apply(&x)), x);
    }
}
