//! Exact symbolic computation for knot quandles and the groups attached to them.
//!
//! The crate provides Laurent-polynomial linear algebra over Z, free-group
//! words with a small text syntax, finitely presented groups (abelianization,
//! Reidemeister-Schreier kernels, Tietze simplification, coset enumeration),
//! the reduced Burau and Tong-Yang-Ma representations of the braid group B3,
//! finite quandle tables, and a numeric count of SL(2,C) representation
//! classes. The `suciu` module carries one family of ribbon-knot group
//! presentations tying the pieces together.

pub mod braid;
pub mod exact;
pub mod fp;
pub mod quandle;
pub mod sl2;
pub mod suciu;
pub mod tym;
pub mod words;

pub use exact::{smith_normal_form, IntMatrix, LaurentMatrix, LaurentPoly};
pub use fp::{CosetTable, CyclicHom, InvariantFactors, Presentation};
pub use words::{Generator, Word};
