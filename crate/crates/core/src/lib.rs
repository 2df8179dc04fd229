//! Exact arithmetic in the inverse semigroup `B_ℤ^𝓕`: triples `(i, j, F)` over
//! ℤ × ℤ × 𝓕, where 𝓕 is an ω-closed family of eventually periodic subsets
//! of ω, with the zero adjoined whenever `∅ ∈ 𝓕`.

#![allow(clippy::result_large_err)]

pub mod classify;
pub mod family;
pub mod morphisms;
pub mod omega_sets;
pub mod partial_maps;
pub mod selftest;
pub mod semigroup;
pub mod syntax;

pub use classify::{classify, IsoType, StructureReport};
pub use family::{Family, FamilyError};
pub use omega_sets::EpSet;
pub use semigroup::{Element, GreenRelation, SemigroupCtx, SemigroupError};
