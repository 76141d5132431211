//! Exact computational algebra for Coxeter systems, Hecke algebras, Soergel
//! bimodules, and monodromic complexes.
//!
//! Everything is computed over exact coefficients (the rationals or an odd
//! prime field); equalities asserted by the verification layer are identities,
//! not approximations.

pub mod bimod;
pub mod catalog;
pub mod coxeter;
pub mod field;
pub mod hecke;
pub mod laurent;
pub mod linalg;
pub mod monodromic;
pub mod polyalg;
pub mod realization;
