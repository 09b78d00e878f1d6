//! Exact analytic representations of integer divisors.
//!
//! - [`exactnum`]: big integers, rationals and elementary number theory.
//! - [`series`]: truncated power series, the generator catalog and the
//!   divisor indicators built from them.
//! - [`divmatrix`]: the divisor matrix, its Möbius inverse, determinants, the
//!   Redheffer matrix, `sigma_0` and the Lambert series.
//! - [`parabolas`]: parabola families through divisor points and the audit of
//!   their index sets.
//! - [`render`]: SVG figures with CSV/JSON sidecars.

pub mod divmatrix;
pub mod error;
pub mod exactnum;
pub mod parabolas;
pub mod render;
pub mod series;

pub use error::{Error, Result};
