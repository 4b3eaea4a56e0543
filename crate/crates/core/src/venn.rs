use crate::error::{Error, Result};
use crate::matrix::{label_string, Gf2Matrix};
use crate::subset::SubsetMask;
use crate::zerosum::ZeroSumSpace;

/// Guard on rank for materializing all 2ʳ Venn regions.
pub const VENN_RANK_LIMIT: usize = 24;

/// The partition of a point set into Venn regions with respect to a basis
/// 𝒳 = {X₁, …, X_r} of a subspace of its power set.
///
/// Regions are indexed by coordinate labels: the label of a region is the
/// integer whose bitstring, first coordinate leftmost, records membership in
/// X₁, …, X_r (so "110" = 6 is the region inside X₁ and X₂ only). Index 0 is
/// the isolated point set. Empty regions are kept and indexable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VennDiagram {
    rank: usize,
    universe: usize,
    regions: Vec<SubsetMask>,
    cardinalities: Vec<u32>,
    signatures: Vec<u32>,
}

fn masks_independent(basis: &[SubsetMask]) -> bool {
    let mut rows: Vec<u64> = Vec::with_capacity(basis.len());
    for m in basis {
        let mut v = m.bits();
        for &row in &rows {
            let pivot = 63 - row.leading_zeros();
            if (v >> pivot) & 1 == 1 {
                v ^= row;
            }
        }
        if v == 0 {
            return false;
        }
        let pivot = 63 - v.leading_zeros();
        let pos = rows.iter().position(|&row| (63 - row.leading_zeros()) < pivot).unwrap_or(rows.len());
        rows.insert(pos, v);
    }
    true
}

impl VennDiagram {
    /// Buckets the elements of a `universe`-element set by their membership
    /// signature across `basis`. Errors if the basis masks are dependent
    /// under XOR, disagree on universe, or exceed the rank guard.
    pub fn build(universe: usize, basis: &[SubsetMask]) -> Result<Self> {
        let r = basis.len();
        if r > VENN_RANK_LIMIT {
            return Err(Error::RankGuard { rank: r, limit: VENN_RANK_LIMIT });
        }
        for m in basis {
            if m.universe() != universe {
                return Err(Error::MaskUniverseMismatch {
                    expected: universe,
                    found: m.universe(),
                });
            }
        }
        if !masks_independent(basis) {
            return Err(Error::DependentBasis);
        }
        let size = 1usize << r;
        let mut regions = vec![SubsetMask::empty(universe); size];
        let mut cardinalities = vec![0u32; size];
        let mut signatures = vec![0u32; universe];
        for (e, sig) in signatures.iter_mut().enumerate() {
            let mut label = 0u32;
            for m in basis {
                label = (label << 1) | u32::from(m.contains(e));
            }
            *sig = label;
            regions[label as usize] = regions[label as usize] | SubsetMask::singleton(universe, e);
            cardinalities[label as usize] += 1;
        }
        Ok(VennDiagram { rank: r, universe, regions, cardinalities, signatures })
    }

    /// The Venn diagram of S with respect to the generator basis of E(S).
    pub fn for_space(space: &ZeroSumSpace) -> Result<Self> {
        VennDiagram::build(space.universe(), space.generators())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Region with coordinate label `a`.
    pub fn region(&self, a: u32) -> SubsetMask {
        self.regions[a as usize]
    }

    pub fn regions(&self) -> &[SubsetMask] {
        &self.regions
    }

    pub fn cardinality(&self, a: u32) -> u32 {
        self.cardinalities[a as usize]
    }

    pub fn cardinalities(&self) -> &[u32] {
        &self.cardinalities
    }

    /// Coordinate label of the region containing element `e`.
    pub fn signature_of(&self, e: usize) -> u32 {
        self.signatures[e]
    }

    pub fn isolated_count(&self) -> u32 {
        self.cardinalities[0]
    }

    /// Multiset of all 2ʳ region cardinalities (zeros included, ascending),
    /// plus the isolated count separately.
    pub fn cardinality_profile(&self) -> (Vec<u32>, u32) {
        let mut multiset = self.cardinalities.clone();
        multiset.sort_unstable();
        (multiset, self.isolated_count())
    }

    /// Union of the regions v(a) over all a with a·b = 1; equals ζ(b) when
    /// the diagram was built from the same basis.
    pub fn region_union_for_zmap(&self, b: u32) -> SubsetMask {
        assert!((b as u64) < (1u64 << self.rank), "coordinate label out of range");
        let mut acc = SubsetMask::empty(self.universe);
        for a in 0..(1u32 << self.rank) {
            if (a & b).count_ones() & 1 == 1 {
                acc = acc | self.regions[a as usize];
            }
        }
        acc
    }

    /// Renders the Venn cardinality table: one `label cardinality` row per
    /// coordinate label in ascending label order.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        for a in 0..(1u32 << self.rank) {
            out.push_str(&label_string(a, self.rank));
            out.push(' ');
            out.push_str(&self.cardinalities[a as usize].to_string());
            out.push('\n');
        }
        out
    }
}

/// The coordinate function ζ: XOR of the basis masks in the support of `b`.
/// The universe size must be passed explicitly so ζ(0) over an empty basis
/// still lands in the right power set.
pub fn zmap(universe: usize, basis: &[SubsetMask], b: u32) -> SubsetMask {
    let r = basis.len();
    assert!((b as u64) < (1u64 << r), "coordinate label out of range");
    let mut acc = SubsetMask::empty(universe);
    for (i, m) in basis.iter().enumerate() {
        if (b >> (r - 1 - i)) & 1 == 1 {
            acc = acc ^ *m;
        }
    }
    acc
}

/// Coordinate relabeling induced by a change of basis: if M is the change of
/// basis matrix from 𝒳 to 𝒴 (so ζ_𝒳(b) = ζ_𝒴(Mb)), the Venn coordinates
/// transform by (Mᵀ)⁻¹, i.e. v_𝒳(a) = v_𝒴((Mᵀ)⁻¹a). Errors on singular or
/// non-square input.
pub fn change_of_coordinates(m: &Gf2Matrix) -> Result<Gf2Matrix> {
    m.transpose().inverse()
}
