use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::AffineMap;
use crate::subset::SubsetMask;
use crate::vector::Gf2Vector;

/// An ordered, duplicate-free list of points of F₂ⁿ sharing one ambient
/// dimension. Index `i` refers to the same point for the lifetime of the value.
#[derive(Clone, PartialEq, Eq)]
pub struct PointSet {
    ambient_dim: usize,
    points: Vec<Gf2Vector>,
}

impl PointSet {
    /// Validates ambient dimensions, distinctness, and the 64-element cap.
    pub fn new(ambient_dim: usize, points: Vec<Gf2Vector>) -> Result<Self> {
        Gf2Vector::zero(ambient_dim)?;
        if points.len() > 64 {
            return Err(Error::TooManyPoints { count: points.len() });
        }
        for p in &points {
            if p.ambient_dim() != ambient_dim {
                return Err(Error::AmbientDimMismatch {
                    expected: ambient_dim,
                    found: p.ambient_dim(),
                });
            }
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::DuplicatePoint { index: i });
            }
        }
        Ok(PointSet { ambient_dim, points })
    }

    pub fn empty(ambient_dim: usize) -> Result<Self> {
        PointSet::new(ambient_dim, Vec::new())
    }

    pub fn from_bitstrings(ambient_dim: usize, texts: &[&str]) -> Result<Self> {
        let points = texts
            .iter()
            .map(|t| Gf2Vector::parse(t, ambient_dim))
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(ambient_dim, points)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, index: usize) -> Gf2Vector {
        self.points[index]
    }

    pub fn points(&self) -> &[Gf2Vector] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = Gf2Vector> + '_ {
        self.points.iter().copied()
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        self.points.contains(v)
    }

    /// XOR of the points selected by `mask`.
    pub fn xor_of_mask(&self, mask: &SubsetMask) -> Gf2Vector {
        assert_eq!(mask.universe(), self.len(), "mask universe must match set size");
        let mut acc = Gf2Vector::zero(self.ambient_dim).expect("validated at construction");
        for i in mask.indices() {
            acc = acc ^ self.points[i];
        }
        acc
    }

    /// True iff `mask` selects an even number of points XORing to zero.
    /// The empty subset counts as an even zero-sum set.
    pub fn is_even_zero_sum(&self, mask: &SubsetMask) -> bool {
        mask.cardinality() & 1 == 0 && self.xor_of_mask(mask).is_zero()
    }

    /// Splits the set into an affine basis and dependent points by a greedy
    /// left-to-right scan: a point joins the basis if it is affinely
    /// independent of the basis built so far, otherwise it joins the dependent
    /// part with its unique expression as an odd sum of basis points.
    ///
    /// Implemented by Gaussian elimination on difference vectors against the
    /// first point: the affine hull is the first point plus the linear span
    /// of differences.
    pub fn decompose(&self) -> AffineDecomposition {
        let k = self.len();
        let mut basis: Vec<usize> = Vec::new();
        let mut dependents: Vec<usize> = Vec::new();
        let mut expressions: Vec<SubsetMask> = Vec::new();
        // Echelon rows over difference vectors, sorted by descending pivot
        // (highest set bit). Each row tracks which non-anchor basis elements
        // XOR to it.
        let mut rows: Vec<(u64, u64)> = Vec::new();

        for (i, p) in self.points.iter().enumerate() {
            if basis.is_empty() {
                basis.push(i);
                continue;
            }
            let anchor = basis[0];
            let mut v = p.bits() ^ self.points[anchor].bits();
            let mut combo = 0u64;
            for &(row, row_combo) in &rows {
                let pivot = 63 - row.leading_zeros();
                if (v >> pivot) & 1 == 1 {
                    v ^= row;
                    combo ^= row_combo;
                }
            }
            if v == 0 {
                // p = XOR of combo's points, plus the anchor when |combo| is even.
                let mut expr = combo;
                if combo.count_ones() & 1 == 0 {
                    expr |= 1u64 << anchor;
                }
                dependents.push(i);
                expressions.push(SubsetMask::from_bits(k, expr));
            } else {
                let pivot = 63 - v.leading_zeros();
                let pos = rows
                    .iter()
                    .position(|&(row, _)| (63 - row.leading_zeros()) < pivot)
                    .unwrap_or(rows.len());
                rows.insert(pos, (v, combo ^ (1u64 << i)));
                basis.push(i);
            }
        }

        AffineDecomposition { universe: k, basis, dependents, expressions }
    }

    /// Affine dimension, `-1` for the empty set.
    pub fn dimension(&self) -> i32 {
        self.decompose().basis.len() as i32 - 1
    }

    /// True iff no nonempty even subset sums to zero, i.e. dim(S) = |S| - 1.
    pub fn is_affinely_independent(&self) -> bool {
        self.dimension() == self.len() as i32 - 1
    }

    /// Set equality ignoring element order.
    pub fn same_set(&self, other: &PointSet) -> bool {
        if self.ambient_dim != other.ambient_dim || self.len() != other.len() {
            return false;
        }
        let mut a: Vec<u64> = self.points.iter().map(|p| p.bits()).collect();
        let mut b: Vec<u64> = other.points.iter().map(|p| p.bits()).collect();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet(n={}, [", self.ambient_dim)?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "])")
    }
}

/// The split S = B ⊔ D of a point set into an affine basis and dependent
/// points, with each dependent point's odd-size expression over the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineDecomposition {
    universe: usize,
    basis: Vec<usize>,
    dependents: Vec<usize>,
    expressions: Vec<SubsetMask>,
}

impl AffineDecomposition {
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Indices of the basis elements, in scan order.
    pub fn basis_indices(&self) -> &[usize] {
        &self.basis
    }

    /// Indices of the dependent elements, in scan order.
    pub fn dependent_indices(&self) -> &[usize] {
        &self.dependents
    }

    /// Expression of the `pos`-th dependent point as a mask of basis element
    /// indices whose points XOR to it; always odd cardinality.
    pub fn expression(&self, pos: usize) -> SubsetMask {
        self.expressions[pos]
    }

    pub fn expressions(&self) -> &[SubsetMask] {
        &self.expressions
    }
}

impl AffineMap {
    /// Image set {f(x) : x ∈ S}, preserving element order. Errors if the
    /// ambient dimensions differ or two points collide under the map.
    pub fn apply_to_set(&self, set: &PointSet) -> Result<PointSet> {
        if self.ambient_dim() != set.ambient_dim() {
            return Err(Error::AmbientDimMismatch {
                expected: set.ambient_dim(),
                found: self.ambient_dim(),
            });
        }
        let images: Vec<Gf2Vector> = set.iter().map(|p| self.apply(&p)).collect();
        PointSet::new(set.ambient_dim(), images).map_err(|e| match e {
            Error::DuplicatePoint { .. } => Error::NonInjectiveImage,
            other => other,
        })
    }
}
