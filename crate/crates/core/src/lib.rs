// SPDX-License-Identifier: Apache-2.0

//! Darboux transforms of rectangular tori in the 3-sphere and of standard
//! cylinders in 3-space.
//!
//! The crate is organised bottom-up:
//!
//! - [`quat`]: quaternion and complex arithmetic with a fixed Hamilton
//!   convention (`ij = k`).
//! - [`diffgeo`]: finite-difference jets, left/right normals and the
//!   numerical mean-curvature oracle.
//! - [`hamstat`]: the Hamiltonian stationary source surfaces, their spectral
//!   frequencies and monochromatic holomorphic sections.
//! - [`darboux`]: prolongation, the general polychromatic transform and the
//!   closed-form bulge-torus and cylinder families.
//! - [`mesh`]: stereographic projection and grid sampling.
//!
//! Everything here is `no_std` (with `alloc`); file formats and the command
//! line live in the companion `darboux` crate.
#![no_std]
// Negated comparisons reject NaN along with the failing values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod darboux;
pub mod diffgeo;
mod error;
pub mod hamstat;
pub mod mesh;
pub mod quat;

pub use error::{Error, Result};
pub use quat::{ComplexPoint, Quaternion};
