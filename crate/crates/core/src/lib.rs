//! Numerical core for the two-user MIMO Gaussian interference channel with
//! limited receiver cooperation.
//!
//! The crate evaluates the closed-form outer bound on the capacity region,
//! the quantize-and-bin / decode-and-bin achievable regions and their convex
//! hull, the guaranteed inner region that certifies a constant gap of
//! `N1 + N2` bits, and the degrees-of-freedom and generalized
//! degrees-of-freedom characterizations. All rates are in bits per channel
//! use (logarithms base 2).
//!
//! The crate is `no_std` (with `alloc`); file formats, plotting and the
//! command-line surface live in the companion `mimoic-cli` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod achievability;
pub mod asymptotics;
pub mod channel;
pub mod complex;
pub mod error;
pub mod hermitian;
mod math;
pub mod region;
pub mod rng;

pub mod outer;

pub use channel::{ChannelInstance, ChannelSeedSpec, CoopSpec, GainSpec};
pub use complex::Cx;
pub use error::Error;
pub use hermitian::{CMatrix, HermitianMatrix};
pub use region::{RateConstraint, RateRegion2D};
