//! Numerical tests of holomorphic extendibility for functions on the unit
//! sphere of C², along complex lines and from circles in the unit disc.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line front end and JSON report writers live in the `holext-cli` crate.

#![no_std]
// Range checks are written as `!(x < bound)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod circle_families;
pub mod error;
pub mod extension;
pub mod fourier;
pub mod gallery;
pub mod geometry;
pub mod notation;
pub mod semiquadrics;
pub mod slicing;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type Complex = num_complex::Complex64;

/// Default number of uniform quadrature nodes on a circle.
pub const DEFAULT_ORDER: usize = 256;
/// Default pass/fail tolerance on offending Fourier coefficients.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Default number of sampled members per family.
pub const DEFAULT_DENSITY: usize = 64;
