//! Exact rational scalars, dense matrices, and the row-reduction kernels the
//! rest of the crate is built on.

mod echelon;
mod matrix;
pub mod rational;

pub use echelon::{insert_into_span, inverse, kernel_basis, rref, solve, EchelonBasis};
pub use matrix::RatMatrix;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
