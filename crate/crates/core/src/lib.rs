//! Exact computational toolkit for the generalized intersection matrix Lie
//! algebras `gim(M_n)` and their finite-dimensional images.
//!
//! Everything is computed over the rationals with no rounding: matrix
//! realizations of `sl_2n`, `sp_2n`, `so_2n`, the evaluation maps of the
//! affine algebra `A_{2n-1}^{(1)}` restricted to its fixed-point subalgebra,
//! Lie closures of generated subalgebras, and classification of the images
//! as direct sums of `a` copies of `sl_2n`, `c` of `sp_2n` and `d` of `so_2n`.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod classical;
pub mod classifier;
pub mod error;
pub mod eval_maps;
pub mod exact_linalg;
pub mod gim;
pub mod lie_engine;
pub mod loop_quotients;
pub mod runner;

pub use error::{GimError, Result};
