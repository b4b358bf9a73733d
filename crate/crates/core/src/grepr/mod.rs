//! Finite groups, character tables and isotypic decompositions.

mod group;
mod isotypic;
mod table;
mod theorems;

pub use group::GroupData;
pub use isotypic::{
    apply_group_algebra, check_representation, isotypic_decompose, isotypic_dims, mat_identity, mat_mul,
    source_isotypic, IsotypicReport, Matrix,
};
pub use table::{
    central_idempotents, group_algebra_mul, parse_character_value, rep_product_decompose, support_closure,
    CharacterTable, GroupAlgebraElem,
};
pub use theorems::{mapping_isotypic, theorem_checks, theorem_checks_on, Check, TheoremReport};
