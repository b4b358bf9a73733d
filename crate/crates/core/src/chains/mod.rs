//! Exact linear algebra and homological algebra over Q and prime fields.

pub mod complex;
pub mod field;
pub mod integral;
pub mod linalg;
pub mod shuffle;

pub use complex::{
    complex_homology, normalize_quotient, Bicomplex, Direction, GradedComplex, HomologyGroup, QuotientBasis,
    TotalComplex,
};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use integral::{smith_diagonal, IntegralComplex, IntegralHomologyGroup};
pub use linalg::{rank, rank_decompose, rank_decompose_with, EchelonSpan, Elimination, RankDecomposition, SparseMatrix, SparseVec};
pub use shuffle::{cup_product, shuffle_map, shuffles, Shuffle};
