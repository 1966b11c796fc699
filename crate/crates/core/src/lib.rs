//! Numerical toolkit for the nonlocal Fisher-KPP equation
//! `u_t = D u_xx + u (1 - φ*u)` with the unit top-hat kernel.
//!
//! Modules:
//! * [`kernel`]: top-hat convolution on uniform grids.
//! * [`dispersion`]: linear stability, the function Δ(X), tongue boundaries.
//! * [`evolve`]: time integration in `u` and `log u` form with front diagnostics.
//! * [`steady`]: periodic steady states and their continuation.
//! * [`asymptote`]: small-D reference problems.
//! * [`travwave`]: minimum-speed travelling waves and rear-tail exponents.
//! * [`cli`]: command-line front end.

// `!(x > 0.0)` deliberately rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptote;
pub mod cli;
pub mod dispersion;
pub mod error;
pub mod evolve;
pub mod fit;
pub mod kernel;
pub mod linalg;
pub mod quad;
pub mod roots;
pub mod steady;
pub mod travwave;

pub use error::{Error, Result};

/// Crate version recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
