//! Regularized holonomy-curvature expectations for time-like hyperlinks in R^4.
//!
//! The crate is `no_std` + `alloc` at its core. The default `std` feature adds
//! parallel evaluation through rayon; results are bitwise identical with and
//! without it because every reduction is performed in a fixed order.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod classical;
mod error;
pub mod geometry;
pub mod invariants;
pub mod kernels;
pub mod liealg;
mod math;
pub mod pathintegral;
pub mod quadrature;

pub use error::{Error, Result};
pub use num_complex::Complex64;
