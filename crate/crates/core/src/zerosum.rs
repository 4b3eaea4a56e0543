use crate::error::{Error, Result};
use crate::point_set::{AffineDecomposition, PointSet};
use crate::subset::SubsetMask;

/// Guard on rank for exhaustive enumeration of E(S): 2²⁴ subsets at most.
pub const ENUMERATION_RANK_LIMIT: usize = 24;

/// The even zero-sum subspace E(S) ≤ 𝒫(S), presented by the generator basis
/// induced by an affine basis of S: one generator X_w = {w} ∪ expr(w) per
/// dependent point w, in dependent scan order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSumSpace {
    universe: usize,
    decomposition: AffineDecomposition,
    generators: Vec<SubsetMask>,
}

impl ZeroSumSpace {
    /// Decomposes `set` and emits one generator per dependent point.
    pub fn build(set: &PointSet) -> Self {
        let decomposition = set.decompose();
        let k = set.len();
        let generators = decomposition
            .dependent_indices()
            .iter()
            .zip(decomposition.expressions())
            .map(|(&w, expr)| *expr ^ SubsetMask::singleton(k, w))
            .collect();
        ZeroSumSpace { universe: k, decomposition, generators }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// dim E(S) = k - (d+1).
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn decomposition(&self) -> &AffineDecomposition {
        &self.decomposition
    }

    pub fn generators(&self) -> &[SubsetMask] {
        &self.generators
    }

    /// The sumset map: XOR of the generators X_w over the dependent points w
    /// selected by `dependent_subset`. Errors if the mask touches a basis
    /// element or was built over the wrong universe.
    pub fn sumset(&self, dependent_subset: &SubsetMask) -> Result<SubsetMask> {
        if dependent_subset.universe() != self.universe {
            return Err(Error::MaskUniverseMismatch {
                expected: self.universe,
                found: dependent_subset.universe(),
            });
        }
        let mut acc = SubsetMask::empty(self.universe);
        let mut remaining = *dependent_subset;
        for (pos, &w) in self.decomposition.dependent_indices().iter().enumerate() {
            if remaining.contains(w) {
                acc = acc ^ self.generators[pos];
                remaining = remaining ^ SubsetMask::singleton(self.universe, w);
            }
        }
        if let Some(stray) = remaining.indices().next() {
            return Err(Error::MaskTouchesBasis { index: stray });
        }
        Ok(acc)
    }

    /// All 2ʳ elements of E(S), ordered by the integer value of the
    /// generator-coefficient vector with the first generator's coefficient
    /// most significant. Guarded at rank ≤ 24.
    pub fn enumerate_even_zero_sums(&self) -> Result<Vec<SubsetMask>> {
        let r = self.rank();
        if r > ENUMERATION_RANK_LIMIT {
            return Err(Error::RankGuard { rank: r, limit: ENUMERATION_RANK_LIMIT });
        }
        let mut out = Vec::with_capacity(1usize << r);
        for coeff in 0..(1u32 << r) {
            let mut acc = SubsetMask::empty(self.universe);
            for (pos, gen) in self.generators.iter().enumerate() {
                if (coeff >> (r - 1 - pos)) & 1 == 1 {
                    acc = acc ^ *gen;
                }
            }
            out.push(acc);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_set::tests::example_thirteen;
    use crate::vector::Gf2Vector;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_subset(rng: &mut StdRng, n: usize, k: usize) -> PointSet {
        let mut bits: Vec<u64> = (0..1u64 << n).collect();
        for i in (1..bits.len()).rev() {
            let j = rng.random_range(0..=i);
            bits.swap(i, j);
        }
        let points = bits[..k].iter().map(|&b| Gf2Vector::from_bits(n, b).unwrap()).collect();
        PointSet::new(n, points).unwrap()
    }

    #[test]
    fn generators_of_example_thirteen() {
        let s = example_thirteen();
        let space = ZeroSumSpace::build(&s);
        assert_eq!(space.rank(), 3);
        let x1 = SubsetMask::from_indices(13, [10, 0, 1, 2, 3, 4, 5, 6]);
        let x2 = SubsetMask::from_indices(13, [11, 3, 4, 5, 6, 7, 8, 9]);
        let x3 = SubsetMask::from_indices(13, [12, 2, 3, 7]);
        assert_eq!(space.generators(), &[x1, x2, x3]);
        for g in space.generators() {
            assert!(s.is_even_zero_sum(g));
        }
    }

    #[test]
    fn independent_set_has_rank_zero() {
        let s = PointSet::from_bitstrings(3, &["000", "100", "010", "001"]).unwrap();
        let space = ZeroSumSpace::build(&s);
        assert_eq!(space.rank(), 0);
        assert!(space.generators().is_empty());
        assert_eq!(space.enumerate_even_zero_sums().unwrap(), vec![SubsetMask::empty(4)]);
    }

    #[test]
    fn sumset_of_two_generators() {
        let s = example_thirteen();
        let space = ZeroSumSpace::build(&s);
        let pair = SubsetMask::from_indices(13, [10, 11]);
        let expect = SubsetMask::from_indices(13, [10, 11, 0, 1, 2, 7, 8, 9]);
        assert_eq!(space.sumset(&pair).unwrap(), expect);

        assert_eq!(space.sumset(&SubsetMask::empty(13)).unwrap(), SubsetMask::empty(13));

        let all = SubsetMask::from_indices(13, [10, 11, 12]);
        let expect_all = SubsetMask::from_indices(13, [10, 11, 12, 0, 1, 3, 8, 9]);
        assert_eq!(space.sumset(&all).unwrap(), expect_all);
    }

    #[test]
    fn sumset_rejects_basis_index() {
        let s = example_thirteen();
        let space = ZeroSumSpace::build(&s);
        let bad = SubsetMask::from_indices(13, [4, 10]);
        assert_eq!(space.sumset(&bad), Err(Error::MaskTouchesBasis { index: 4 }));
    }

    #[test]
    fn enumeration_matches_coefficient_order() {
        let s = example_thirteen();
        let space = ZeroSumSpace::build(&s);
        let all = space.enumerate_even_zero_sums().unwrap();
        assert_eq!(all.len(), 8);
        let [x1, x2, x3] = [space.generators()[0], space.generators()[1], space.generators()[2]];
        assert_eq!(all[0], SubsetMask::empty(13));
        assert_eq!(all[0b001], x3);
        assert_eq!(all[0b010], x2);
        assert_eq!(all[0b011], x2 ^ x3);
        assert_eq!(all[0b100], x1);
        assert_eq!(all[0b101], x1 ^ x3);
        assert_eq!(all[0b110], x1 ^ x2);
        assert_eq!(all[0b111], x1 ^ x2 ^ x3);
        for mask in &all {
            assert!(s.is_even_zero_sum(mask));
        }
    }

    #[test]
    fn rank_matches_exhaustive_count() {
        // Oracle: list every even zero-sum subset of a random 6-point set in
        // F₂³ by iterating all 2⁶ masks; E(S) must have exactly 2^rank members.
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..100 {
            let s = random_subset(&mut rng, 3, 6);
            let space = ZeroSumSpace::build(&s);
            assert_eq!(space.rank(), 6 - (s.dimension() + 1) as usize);
            let exhaustive: Vec<SubsetMask> = (0u64..64)
                .map(|b| SubsetMask::from_bits(6, b))
                .filter(|m| s.is_even_zero_sum(m))
                .collect();
            assert_eq!(exhaustive.len(), 1usize << space.rank());
            let mut enumerated = space.enumerate_even_zero_sums().unwrap();
            enumerated.sort();
            let mut exhaustive = exhaustive;
            exhaustive.sort();
            assert_eq!(enumerated, exhaustive);
        }
    }

    #[test]
    fn empty_and_singleton_sets() {
        let e = PointSet::empty(3).unwrap();
        let space = ZeroSumSpace::build(&e);
        assert_eq!(space.rank(), 0);
        assert_eq!(space.enumerate_even_zero_sums().unwrap(), vec![SubsetMask::empty(0)]);

        let s = PointSet::from_bitstrings(3, &["110"]).unwrap();
        let space = ZeroSumSpace::build(&s);
        assert_eq!(space.rank(), 0);
    }

    #[test]
    fn enumeration_rank_guard() {
        // All 32 points of F₂⁵: rank 26 exceeds the 2²⁴ enumeration guard.
        let points: Vec<Gf2Vector> =
            (0..32u64).map(|b| Gf2Vector::from_bits(5, b).unwrap()).collect();
        let s = PointSet::new(5, points).unwrap();
        let space = ZeroSumSpace::build(&s);
        assert_eq!(space.rank(), 26);
        assert_eq!(
            space.enumerate_even_zero_sums(),
            Err(Error::RankGuard { rank: 26, limit: ENUMERATION_RANK_LIMIT })
        );
    }

    #[test]
    fn is_even_zero_sum_examples() {
        let s = example_thirteen();
        let x3 = SubsetMask::from_indices(13, [12, 2, 3, 7]);
        assert!(s.is_even_zero_sum(&x3));
        assert!(s.is_even_zero_sum(&SubsetMask::empty(13)));
        let odd = SubsetMask::from_indices(13, [0, 1, 2]);
        assert!(!s.is_even_zero_sum(&odd));
    }

    #[test]
    fn closure_under_symmetric_difference() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..50 {
            let k = rng.random_range(1..=10);
            let s = random_subset(&mut rng, 4, k);
            let space = ZeroSumSpace::build(&s);
            let all = space.enumerate_even_zero_sums().unwrap();
            for _ in 0..20 {
                let x = all[rng.random_range(0..all.len())];
                let y = all[rng.random_range(0..all.len())];
                assert!(s.is_even_zero_sum(&(x ^ y)));
            }
        }
    }

    #[test]
    fn dependent_intersection_recovers_argument() {
        // D ∩ φ(D') = D' for all D' ⊆ D.
        let s = example_thirteen();
        let space = ZeroSumSpace::build(&s);
        let d_mask = SubsetMask::from_indices(13, space.decomposition().dependent_indices().iter().copied());
        for sub in 0u64..8 {
            let d_prime = SubsetMask::from_indices(
                13,
                space
                    .decomposition()
                    .dependent_indices()
                    .iter()
                    .enumerate()
                    .filter(|(pos, _)| (sub >> pos) & 1 == 1)
                    .map(|(_, &w)| w),
            );
            let image = space.sumset(&d_prime).unwrap();
            assert_eq!(image & d_mask, d_prime);
        }
    }
}
