//! Exact integer and Laurent-polynomial linear algebra.

mod laurent;
mod matrix;
mod snf;

pub use laurent::LaurentPoly;
pub use matrix::{IntMatrix, LaurentMatrix, MatrixError};
pub use snf::{in_row_space, smith_normal_form};
