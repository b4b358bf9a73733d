//! Coends over Δ, set-level mapping objects and the adjunction between them,
//! all verified by finite enumeration.

mod adjunction;
mod cosimplicial;
mod hom;
mod tensor;

pub use adjunction::{adjunction_check, naturality_check, AdjunctionReport, CompatibleFamily};
pub use cosimplicial::{mapping_cosimplicial_set, CosimplicialSSet, MappingCosimplicialSet};
pub use hom::{enumerate_hom, find_isomorphism, MAX_HOM_SEARCH};
pub use tensor::{tensor_under_delta, TensorProduct};
