//! Euclidean propagator of a quartic anharmonic oscillator with time-dependent
//! coefficients: special functions, the harmonic ODE part, the anharmonic
//! correction series and a time-sliced ground-truth oracle.
//!
//! The crate is `no_std` with `alloc`; IO and the command line live in the
//! `quartic-prop` companion crate.

#![no_std]
// `!(x > 0.0)` guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod anharmonic;
pub mod error;
pub mod jet;
pub mod math;
pub mod oracle;
pub mod oscillator_ode;
pub mod quadrature;
pub mod quartic_integral;
pub mod special_fn;

pub use error::{Error, Result};
