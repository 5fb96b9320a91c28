// SPDX-License-Identifier: Apache-2.0

//! Darboux transforms.
//!
//! Three independent routes produce the same surfaces:
//!
//! 1. [`prolong_transform`]: numerical prolongation `f̂ = f + αν⁻¹` of any
//!    holomorphic section, with `ν` solving `dα = −df ν`.
//! 2. [`polychromatic_transform`]: the general closed formula for
//!    polychromatic transforms of a Hamiltonian stationary torus with `A = 0`.
//! 3. [`BulgeTorusFamily`] and [`CylinderFamily`]: the simplified closed forms
//!    of the n-bulge tori of revolution and of the cylinders of revolution.

mod bulge;
mod cylinder;
mod poly;
mod prolong;

pub use bulge::{BulgeTorusFamily, DenominatorBound, MeanCurvatureSpecial, Tau};
pub use cylinder::{CmcReport, CylinderFamily, CylinderTau};
pub use poly::{polychromatic_transform, PolychromaticData, PolychromaticTransform};
pub use prolong::{prolong_transform, Prolongation};

/// Tolerance for classifying `u = v√(n² − 1)` as the CMC boundary.
pub const CMC_TOL: f64 = 1e-9;
