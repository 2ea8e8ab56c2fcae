//! Retracts, Hosszú–Gluskin decompositions, Post covers and polyadic
//! homomorphisms.

mod cover;
mod hg;
mod hom;
mod retract;

pub use cover::{post_cover, universal_extend, CoverChecks, PostCover, UniversalExtension, UNIQUENESS_SCAN_ORDER};
pub(crate) use hg::sokolov_triple;
pub use hg::{hg_decompose, hg_reconstruct, HgDecomposition};
pub use hom::{
    brute_force_homs, enumerate_homs, hom_decompose, hom_verify, ConditionReport, HomCheck, HomEnumeration,
    HomFactorization, PolyadicHom,
};
pub use retract::{inverse_formula_mismatch, retract_at, retracts_isomorphic, Retract, RetractReport};
