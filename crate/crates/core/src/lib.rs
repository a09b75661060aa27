//! Supersquares and extraordinary supersquares over `GF(p^n)`.
//!
//! Squares of order `d` are labeled partitions of `F_d × F_d`. A supersquare
//! is the coset partition of an order-`d` subgroup; it is extraordinary when
//! every pair of subgroup elements has a trace-zero determinant.

pub mod cli;
pub mod constructions;
pub mod document;
pub mod enumeration;
pub mod error;
pub mod field;
pub mod squares;
pub mod vector_space;

pub use constructions::{CompleteSet, SetKind};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use squares::{GroupSpec, Origin, Square, SquareTaxonomy};
pub use vector_space::{Point, Subgroup};
