//! Additive codes over finite field extensions and the subspace packings
//! that describe them.

pub mod cli;
pub mod code;
pub mod constructions;
mod error;
pub mod format;
pub mod field;
pub mod geometry;
pub mod limits;
pub mod linalg;
pub mod packing;
pub mod subspace;

pub use code::AdditiveCode;
pub use error::{Error, Result};
pub use field::{BaseField, FieldTower, Fqh};
pub use limits::Limits;
pub use linalg::Matrix;
pub use packing::Packing;
pub use subspace::Subspace;
