//! Generalized Boolean algebras, partial actions on them, and the partial skew
//! group rings `L_R(S)` attached to strongly E*-unitary inverse semigroups.
//!
//! Graph and labelled-graph semigroups are handled symbolically through a
//! cylinder-set realization of their tight spectra, so the Leavitt and
//! labelled Leavitt relations can be checked with exact arithmetic.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod gba;
pub mod graph_algebra;
pub mod inverse_semigroup;
pub mod labelled_algebra;
pub mod partial_action;
pub mod report;
pub mod skew_algebra;
pub mod tight_filters;

pub use error::{Error, Result};
pub use report::{Check, Report};
