//! Stabilized finite element methods for the time-spectral (single frequency)
//! convection-diffusion equation
//!
//! ```text
//! i ω φ + a·∇φ = ∇·(κ ∇φ) + q
//! ```
//!
//! The crate provides closed-form oracles ([`analytic`]), structured mesh
//! generators ([`mesh`]), element assembly for Galerkin, SUPG, VMS/GLS and ASU
//! stabilization ([`fem`]), a sparse restarted GMRES ([`solver`]) and the
//! experiment drivers behind the `tsfem` command line tool ([`bench`]).

// `!(x > 0.0)` is used on purpose so NaN inputs are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod analytic;
pub mod bench;
pub mod error;
pub mod fem;
pub mod mesh;
pub mod numerics;
pub mod solver;

pub use error::{Error, Result};
pub use numerics::{ComplexField, Cx};
