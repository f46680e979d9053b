//! Representations of the braid group through the type-A Hecke algebra over
//! finite fields: Hoefsmit matrix models, invariant forms, recognition of the
//! classical group containing the image of the commutator subgroup, and
//! exhaustive certification of small images.

pub mod braid;
pub mod classify;
pub mod engine;
pub mod error;
pub mod gf;
pub mod hecke;
pub mod linalg;
pub mod young;

pub use braid::BraidWord;
pub use error::{Error, Result};
pub use gf::{FEl, FieldCtx, FieldSpec};
pub use hecke::HeckeRep;
pub use linalg::Mat;
pub use young::{Partition, StdTableau};
