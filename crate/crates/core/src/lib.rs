//! Affine equivalence of finite subsets of F₂ⁿ, decided through Venn-region
//! cardinality invariants of the even zero-sum subspace, with explicit
//! affine-automorphism witnesses and Sidon-set (quad cap) classification.
//!
//! The pipeline: decompose a set into an affine basis plus dependent points
//! ([`PointSet::decompose`]), read off a generator basis of the even zero-sum
//! subspace E(S) ([`ZeroSumSpace`]), partition the set into Venn regions of
//! that basis ([`VennDiagram`]), and compare two sets by searching for a
//! cardinality-preserving linear permutation of the regions
//! ([`venn_equivalent`]). A positive verdict converts into a concrete affine
//! automorphism carrying one set onto the other
//! ([`reconstruct_affine_map`]). The [`caps`] module layers Sidon-set
//! detection, the complete classification of caps with size-dimension
//! difference 3, and the built-in 7-dimensional cap templates on top.

pub mod caps;
pub mod equiv;
pub mod error;
pub mod matrix;
pub mod point_set;
pub mod subset;
pub mod vector;
pub mod venn;
pub mod zerosum;

pub use caps::{
    builtin_templates, construct_diff3_cap, diff3_classes, diff3_is_cap_triple, find_quad,
    is_cap, known_template_witnesses, template_by_name, CapTemplate, Diff3Class, TemplateWitness,
};
pub use equiv::{
    brute_force_equivalent, build_witness, equivalence_witness, equivalent_diff3,
    reconstruct_affine_map, validate_witness_matrix, venn_equivalence, venn_equivalent,
    EquivalenceWitness, InequivalenceReason, VennVerdict,
};
pub use error::{Error, Result};
pub use matrix::{bits_to_label, label_string, label_to_bits, AffineMap, Gf2Matrix};
pub use point_set::{AffineDecomposition, PointSet};
pub use subset::SubsetMask;
pub use vector::Gf2Vector;
pub use venn::{change_of_coordinates, zmap, VennDiagram};
pub use zerosum::ZeroSumSpace;
