//! Exact algebra for pairs of commuting nilpotent matrices.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is exact: prime
//! fields, arbitrary-precision integers and sparse multivariate polynomials.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod commutant;
mod error;
pub mod hilbert;
pub mod matrix;
pub mod rank_laws;
pub mod rng;
pub mod upsilon;

pub use error::{Error, Result};
