//! Exact cochain models of mapping spaces `Map(|K|, Y)` built from finite
//! simplicial sets, with finite group isotypic decompositions.

pub mod chains;
pub mod error;
pub mod grepr;
pub mod io;
pub mod kanop;
pub mod mapmodel;
pub mod sset;
pub mod verify;

pub use error::{Error, Result};
