//! Two routes to the same linear-optics output probability.
//!
//! n single photons enter the first n modes of an m-mode interferometer `U`.
//! The probability of seeing one photon in each of the first n output modes is
//! `|perm(U[..n, ..n])|²`. This crate computes it three ways:
//!
//! * exactly, through matrix permanents ([`permanent`], [`fock`]),
//! * as a Gaussian-weighted phase-space integral estimated by Monte Carlo
//!   ([`phasespace`], [`mcint`]),
//! * as a coefficient of a product of linear forms ([`macmahon`]).
//!
//! Each route is an oracle for the others.

pub mod error;
pub mod fock;
pub mod linalg;
pub mod macmahon;
pub mod mcint;
pub mod permanent;
pub mod phasespace;

pub use error::{Error, Result};
pub use num_complex::Complex64;
