//! Numerical toolkit for weighted zero distributions of holomorphic
//! functions in the unit disk.
//!
//! Weights are ρ-trigonometrically convex 2π-periodic functions `h`, growth
//! is measured through convex gauges `g`, and zeros are counted against the
//! subharmonic test functions `g((1−r)/r)·h(θ)`.
//!
//! - [`periodic`]: periodic functions, the ρ-trigonometric convexity checks,
//!   positive parts, support functions and indicator estimates.
//! - [`gauge`]: convex growth gauges and their class conditions.
//! - [`testfn`]: test functions, the threshold radius `r_ρ` and finite-difference
//!   subharmonicity audits.
//! - [`charge`]: charges in the disk, weighted radial counting functions,
//!   Stieltjes integrals and the slicing identity.
//! - [`zeros`]: divisors, counting measures, finite Blaschke products and
//!   argument-principle zero counts.
//! - [`verify`]: both sides of the main inequality, empirical constants and
//!   uniqueness audits.
//! - [`cli`] and [`plot`]: the `trigdisk` command-line front-end and SVG output.

// `!(x < y)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod charge;
pub mod cli;
pub mod error;
pub mod gauge;
pub mod periodic;
pub mod plot;
pub mod quad;
pub mod testfn;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
