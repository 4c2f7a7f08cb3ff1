//! Invariant distances and metrics on model domains.
//!
//! The crate computes the Carathéodory distance `c_D`, the Lempert function
//! `l_D` (equal to the Kobayashi distance `k_D` on planar domains), the Bergman
//! kernel, metric and distance, and the Kobayashi metric on a catalog of
//! planar domains (discs, half-planes, sectors, the slit plane, annuli,
//! two-disc hulls, lenses and Jordan domains) and on balls, polydiscs and
//! convex bodies in `C^n`.
//!
//! All distances use the `tanh⁻¹` scale, so that the distance on the unit disc
//! is `tanh⁻¹ |(z - w) / (1 - conj(z) w)|`.
//!
//! The [`bounds`] module turns the classical boundary estimates for these
//! distances into pure functions and runs sampled verification suites on them.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the rest
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod conformal;
pub mod distances;
pub mod domains;
mod error;
pub mod quadrature;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Shorthand used throughout the crate.
pub type C64 = Complex64;
