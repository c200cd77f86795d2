//! Moulds over finite abelian groups, the ari bracket and its symmetry spaces,
//! Lie-word Kashiwara–Vergne conditions, and dihedral double-shuffle relations.

pub mod algebra;
pub mod dihedral;
pub mod error;
pub mod flexion;
pub mod group;
pub mod json;
pub mod lie;
pub mod mould;
pub mod random;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
pub use group::{Elem, Group};
pub use mould::{Mould, Side};
