use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{AffineMap, Gf2Matrix};
use crate::point_set::PointSet;
use crate::venn::VennDiagram;
use crate::zerosum::ZeroSumSpace;

/// Guard on rank for the witness search; |GL(r,2)| grows too fast past this.
pub const SEARCH_RANK_LIMIT: usize = 20;

/// Guard on ambient dimension for the exhaustive affine-orbit oracle.
pub const ORACLE_DIM_LIMIT: usize = 4;

/// The invariant that first separated the two sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InequivalenceReason {
    Size { left: usize, right: usize },
    Dimension { left: i32, right: i32 },
    CardinalityMultiset,
    IsolatedCount,
    NoLinearBijection,
}

impl fmt::Display for InequivalenceReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InequivalenceReason::Size { left, right } => {
                write!(f, "sizes differ ({left} vs {right})")
            }
            InequivalenceReason::Dimension { left, right } => {
                write!(f, "dimensions differ ({left} vs {right})")
            }
            InequivalenceReason::CardinalityMultiset => {
                write!(f, "cardinality multisets differ")
            }
            InequivalenceReason::IsolatedCount => {
                write!(f, "isolated point counts differ")
            }
            InequivalenceReason::NoLinearBijection => {
                write!(f, "no cardinality-preserving linear bijection")
            }
        }
    }
}

/// Outcome of the Venn-region equivalence decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VennVerdict {
    Equivalent(Gf2Matrix),
    NotEquivalent(InequivalenceReason),
}

impl VennVerdict {
    pub fn witness(&self) -> Option<&Gf2Matrix> {
        match self {
            VennVerdict::Equivalent(m) => Some(m),
            VennVerdict::NotEquivalent(_) => None,
        }
    }
}

/// A complete equivalence witness: the region-permuting matrix, the induced
/// element bijection, and the affine automorphism carrying S onto T.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub matrix: Gf2Matrix,
    /// `element_bijection[i]` is the index in T of the image of element i of S.
    pub element_bijection: Vec<usize>,
    pub affine_map: AffineMap,
}

struct Search<'a> {
    rank: usize,
    card_s: &'a [u32],
    card_t: &'a [u32],
    cols: Vec<u32>,
    in_span: Vec<bool>,
    span_list: Vec<u32>,
}

impl Search<'_> {
    /// Re-checks the profile condition over the whole span of the assigned
    /// basis images. Iterates coefficient sets in Gray-code order so each
    /// step updates both labels with one XOR.
    fn span_consistent(&self) -> bool {
        let level = self.cols.len();
        let r = self.rank;
        let mut a = 0u32;
        let mut image = 0u32;
        let mut prev_gray = 0u32;
        for idx in 1..(1u32 << level) {
            let gray = idx ^ (idx >> 1);
            let flip = (gray ^ prev_gray).trailing_zeros() as usize;
            prev_gray = gray;
            a ^= 1 << (r - 1 - flip);
            image ^= self.cols[flip];
            if self.card_s[a as usize] != self.card_t[image as usize] {
                return false;
            }
        }
        true
    }

    fn run(&mut self) -> bool {
        if self.cols.len() == self.rank {
            return true;
        }
        for cand in 1..(1u32 << self.rank) {
            if self.in_span[cand as usize] {
                continue;
            }
            self.cols.push(cand);
            if self.span_consistent() {
                let old_len = self.span_list.len();
                for i in 0..old_len {
                    let new = self.span_list[i] ^ cand;
                    self.in_span[new as usize] = true;
                    self.span_list.push(new);
                }
                if self.run() {
                    return true;
                }
                for dropped in self.span_list.drain(old_len..) {
                    self.in_span[dropped as usize] = false;
                }
            }
            self.cols.pop();
        }
        false
    }
}

fn diagrams(s: &PointSet, t: &PointSet) -> Result<(VennDiagram, VennDiagram)> {
    let zs = ZeroSumSpace::build(s);
    let zt = ZeroSumSpace::build(t);
    Ok((VennDiagram::for_space(&zs)?, VennDiagram::for_space(&zt)?))
}

/// Decides affine equivalence of S and T through their Venn cardinality
/// profiles, reporting the first invariant that separates them or a
/// region-permuting witness matrix N with |v_S(a)| = |v_T(Na)| for all a.
///
/// If the identity matrix is a witness it is returned directly; otherwise a
/// backtracking search assigns images of the standard basis vectors in
/// ascending label order and returns the first assignment found, pruning any
/// partial assignment whose span already violates the profile condition.
pub fn venn_equivalence(s: &PointSet, t: &PointSet) -> Result<VennVerdict> {
    if s.len() != t.len() {
        return Ok(VennVerdict::NotEquivalent(InequivalenceReason::Size {
            left: s.len(),
            right: t.len(),
        }));
    }
    let (ds, dt) = (s.dimension(), t.dimension());
    if ds != dt {
        return Ok(VennVerdict::NotEquivalent(InequivalenceReason::Dimension {
            left: ds,
            right: dt,
        }));
    }
    let r = s.len() - (ds + 1) as usize;
    if r > SEARCH_RANK_LIMIT {
        return Err(Error::RankGuard { rank: r, limit: SEARCH_RANK_LIMIT });
    }
    let (diag_s, diag_t) = diagrams(s, t)?;
    debug_assert_eq!(r, diag_t.rank());

    let (multiset_s, isolated_s) = diag_s.cardinality_profile();
    let (multiset_t, isolated_t) = diag_t.cardinality_profile();
    if multiset_s != multiset_t {
        return Ok(VennVerdict::NotEquivalent(InequivalenceReason::CardinalityMultiset));
    }
    if isolated_s != isolated_t {
        return Ok(VennVerdict::NotEquivalent(InequivalenceReason::IsolatedCount));
    }
    if r == 0 {
        return Ok(VennVerdict::Equivalent(Gf2Matrix::identity(0)));
    }
    if diag_s.cardinalities() == diag_t.cardinalities() {
        return Ok(VennVerdict::Equivalent(Gf2Matrix::identity(r)));
    }
    let mut search = Search {
        rank: r,
        card_s: diag_s.cardinalities(),
        card_t: diag_t.cardinalities(),
        cols: Vec::with_capacity(r),
        in_span: {
            let mut v = vec![false; 1usize << r];
            v[0] = true;
            v
        },
        span_list: vec![0],
    };
    if search.run() {
        let cols: Vec<u64> = search
            .cols
            .iter()
            .map(|&label| crate::matrix::label_to_bits(label, r))
            .collect();
        Ok(VennVerdict::Equivalent(Gf2Matrix::from_col_bits(r, &cols)))
    } else {
        Ok(VennVerdict::NotEquivalent(InequivalenceReason::NoLinearBijection))
    }
}

/// Witness matrix if the sets are equivalent, `None` otherwise.
pub fn venn_equivalent(s: &PointSet, t: &PointSet) -> Result<Option<Gf2Matrix>> {
    Ok(match venn_equivalence(s, t)? {
        VennVerdict::Equivalent(m) => Some(m),
        VennVerdict::NotEquivalent(_) => None,
    })
}

/// True iff N is invertible and |v_S(a)| = |v_T(Na)| for all 2ʳ labels a.
pub fn validate_witness_matrix(s: &PointSet, t: &PointSet, n: &Gf2Matrix) -> Result<bool> {
    let (diag_s, diag_t) = diagrams(s, t)?;
    if diag_s.rank() != diag_t.rank() {
        return Err(Error::OrderMismatch { left: diag_s.rank(), right: diag_t.rank() });
    }
    let r = diag_s.rank();
    if n.rows() != r || n.cols() != r {
        return Err(Error::OrderMismatch { left: n.rows().max(n.cols()), right: r });
    }
    if !n.is_invertible() {
        return Ok(false);
    }
    for a in 0..(1u32 << r) {
        if diag_s.cardinality(a) != diag_t.cardinality(n.mul_label(a)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matches elements region by region: region a of S maps onto region Na of T,
/// both sides in ascending element-index order.
fn region_bijection(diag_s: &VennDiagram, diag_t: &VennDiagram, n: &Gf2Matrix) -> Vec<usize> {
    let k = diag_s.universe();
    let mut bijection = vec![usize::MAX; k];
    for a in 0..(1u32 << diag_s.rank()) {
        let source = diag_s.region(a);
        let target = diag_t.region(n.mul_label(a));
        for (i, j) in source.indices().zip(target.indices()) {
            bijection[i] = j;
        }
    }
    bijection
}

/// Extends the difference columns to a full basis of F₂ⁿ with standard basis
/// vectors, returning an invertible n×n matrix.
fn complete_to_basis(n: usize, columns: &[u64]) -> Result<Gf2Matrix> {
    let mut rows: Vec<(u64, u64)> = Vec::new(); // (reduced vector, original)
    let mut chosen: Vec<u64> = Vec::new();
    let add = |v: u64, rows: &mut Vec<(u64, u64)>, chosen: &mut Vec<u64>| -> bool {
        let mut reduced = v;
        for &(row, _) in rows.iter() {
            let pivot = 63 - row.leading_zeros();
            if (reduced >> pivot) & 1 == 1 {
                reduced ^= row;
            }
        }
        if reduced == 0 {
            return false;
        }
        let pivot = 63 - reduced.leading_zeros();
        let pos = rows
            .iter()
            .position(|&(row, _)| (63 - row.leading_zeros()) < pivot)
            .unwrap_or(rows.len());
        rows.insert(pos, (reduced, v));
        chosen.push(v);
        true
    };
    for &c in columns {
        if !add(c, &mut rows, &mut chosen) {
            return Err(Error::Internal("difference columns not independent"));
        }
    }
    for coord in 0..n {
        if chosen.len() == n {
            break;
        }
        add(1u64 << coord, &mut rows, &mut chosen);
    }
    if chosen.len() != n {
        return Err(Error::Internal("failed to complete to a basis"));
    }
    Ok(Gf2Matrix::from_col_bits(n, &chosen))
}

/// Rebuilds a full affine automorphism from a validated witness matrix:
/// elements are matched region-wise, the matching is restricted to an affine
/// basis of S, both bases are completed to affine bases of F₂ⁿ, and the
/// unique affine map agreeing on them is returned after an exact f(S) = T
/// check.
pub fn reconstruct_affine_map(s: &PointSet, t: &PointSet, n: &Gf2Matrix) -> Result<AffineMap> {
    Ok(build_witness(s, t, n)?.affine_map)
}

/// As [`reconstruct_affine_map`], but also returns the witness matrix and the
/// element bijection it induces.
pub fn build_witness(s: &PointSet, t: &PointSet, n: &Gf2Matrix) -> Result<EquivalenceWitness> {
    if s.ambient_dim() != t.ambient_dim() {
        return Err(Error::AmbientDimMismatch {
            expected: s.ambient_dim(),
            found: t.ambient_dim(),
        });
    }
    if !validate_witness_matrix(s, t, n)? {
        return Err(Error::InvalidWitness);
    }
    let dim = s.ambient_dim();
    if s.is_empty() {
        return Ok(EquivalenceWitness {
            matrix: n.clone(),
            element_bijection: Vec::new(),
            affine_map: AffineMap::identity(dim)?,
        });
    }
    let (diag_s, diag_t) = diagrams(s, t)?;
    let bijection = region_bijection(&diag_s, &diag_t, n);

    let decomp = s.decompose();
    let basis = decomp.basis_indices();
    let anchor_s = s.point(basis[0]);
    let anchor_t = t.point(bijection[basis[0]]);
    let cols_s: Vec<u64> =
        basis[1..].iter().map(|&i| (s.point(i) ^ anchor_s).bits()).collect();
    let cols_t: Vec<u64> =
        basis[1..].iter().map(|&i| (t.point(bijection[i]) ^ anchor_t).bits()).collect();
    let u = complete_to_basis(dim, &cols_s)?;
    let v = complete_to_basis(dim, &cols_t)?;
    let linear = v.multiply(&u.inverse()?);
    let translation = linear.mul_vector(&anchor_s) ^ anchor_t;
    let map = AffineMap::new(linear, translation)?;
    if !map.is_invertible() {
        return Err(Error::Internal("reconstructed linear part is singular"));
    }
    let image = map.apply_to_set(s)?;
    if !image.same_set(t) {
        return Err(Error::Internal("reconstructed map does not carry S onto T"));
    }
    Ok(EquivalenceWitness { matrix: n.clone(), element_bijection: bijection, affine_map: map })
}

/// One-call form: decide equivalence and, when equivalent, return the full
/// witness (matrix, element bijection, affine automorphism).
pub fn equivalence_witness(s: &PointSet, t: &PointSet) -> Result<Option<EquivalenceWitness>> {
    match venn_equivalence(s, t)? {
        VennVerdict::Equivalent(m) => Ok(Some(build_witness(s, t, &m)?)),
        VennVerdict::NotEquivalent(_) => Ok(None),
    }
}

/// Enumerates GL(n,2) by extending independent column sets, composed with all
/// 2ⁿ translations, and reports whether any affine automorphism carries S
/// onto T. Exhaustive ground truth for n ≤ 4.
pub fn brute_force_equivalent(s: &PointSet, t: &PointSet) -> Result<bool> {
    let n = s.ambient_dim();
    if t.ambient_dim() != n {
        return Err(Error::AmbientDimMismatch { expected: n, found: t.ambient_dim() });
    }
    if n > ORACLE_DIM_LIMIT {
        return Err(Error::AmbientTooLarge { n, limit: ORACLE_DIM_LIMIT });
    }
    if s.len() != t.len() {
        return Ok(false);
    }
    let size = 1usize << n;
    let point_mask = |set: &PointSet| -> u32 {
        set.iter().fold(0u32, |acc, p| acc | (1u32 << p.bits()))
    };
    let s_codes: Vec<u32> = s.iter().map(|p| p.bits() as u32).collect();
    let t_mask = point_mask(t);
    // All translates of T; f(S) = T iff L(S) equals one of them.
    let mut translates = vec![0u32; size];
    for (tv, slot) in translates.iter_mut().enumerate() {
        let mut m = 0u32;
        for p in t.iter() {
            m |= 1u32 << (p.bits() as u32 ^ tv as u32);
        }
        *slot = m;
    }
    translates.sort_unstable();

    fn extend(
        n: usize,
        cols: &mut Vec<u32>,
        span: &mut Vec<bool>,
        s_codes: &[u32],
        translates: &[u32],
    ) -> bool {
        if cols.len() == n {
            let mut image = 0u32;
            for &p in s_codes {
                let mut q = 0u32;
                let mut rem = p;
                while rem != 0 {
                    let i = rem.trailing_zeros() as usize;
                    q ^= cols[i];
                    rem &= rem - 1;
                }
                image |= 1u32 << q;
            }
            return translates.binary_search(&image).is_ok();
        }
        let span_snapshot: Vec<u32> =
            (0..span.len() as u32).filter(|&v| span[v as usize]).collect();
        for cand in 1..(1u32 << n) {
            if span[cand as usize] {
                continue;
            }
            cols.push(cand);
            for &v in &span_snapshot {
                span[(v ^ cand) as usize] = true;
            }
            if extend(n, cols, span, s_codes, translates) {
                return true;
            }
            for &v in &span_snapshot {
                span[(v ^ cand) as usize] = false;
            }
            cols.pop();
        }
        false
    }

    // Size-0 sets are equivalent via the identity.
    if s.is_empty() {
        return Ok(t_mask == 0);
    }
    let mut span = vec![false; size];
    span[0] = true;
    Ok(extend(n, &mut Vec::with_capacity(n), &mut span, &s_codes, &translates))
}

/// Decides equivalence for sets with size − dimension = 3 (rank 2): the
/// cardinality multiset plus the isolated count decide outright, because
/// every origin-fixing permutation of F₂² is linear.
pub fn equivalent_diff3(s: &PointSet, t: &PointSet) -> Result<bool> {
    for set in [s, t] {
        let d = set.dimension();
        if set.len() as i64 - d as i64 != 3 {
            return Err(Error::NotDiffThree { size: set.len(), dimension: d });
        }
    }
    let (diag_s, diag_t) = diagrams(s, t)?;
    let (ms, is) = diag_s.cardinality_profile();
    let (mt, it) = diag_t.cardinality_profile();
    Ok(ms == mt && is == it)
}
