//! Lie words over x and y_σ, Kashiwara–Vergne conditions and the ma map.

pub mod kv;
pub mod lyndon;
pub mod ma;
pub mod ncpoly;
pub mod parse;

pub use ncpoly::{Gen, NCPoly};
