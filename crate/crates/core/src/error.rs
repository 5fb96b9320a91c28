// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot invert the zero quaternion")]
    ZeroQuaternion,

    #[error(
        "exponential axis must be a unit imaginary quaternion (|axis| = {norm}, real part {real})"
    )]
    NotUnitAxis { norm: f64, real: f64 },

    #[error("non-finite value encountered at ({x}, {y})")]
    NonFinite { x: f64, y: f64 },

    #[error("degenerate jet: |f_x| = {norm}")]
    DegenerateJet { norm: f64 },

    #[error("sample ({x}, {y}) is not conformal (residual {residual:e} exceeds {threshold:e})")]
    NonConformal {
        x: f64,
        y: f64,
        residual: f64,
        threshold: f64,
    },

    #[error("mean curvature is only defined for surfaces in S3 or R3")]
    UnsupportedTarget,

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("u = {u} is below the threshold {bound} = {threshold}")]
    BelowThreshold {
        u: f64,
        threshold: f64,
        bound: &'static str,
    },

    #[error("no admissible frequency lies on the spectral circle")]
    EmptySpectrum,

    #[error("only multipliers with A = 0 are supported")]
    NonzeroA,

    #[error("section is not holomorphic for the left normal (residual {residual:e})")]
    NotHolomorphic { residual: f64 },

    #[error("branch point of the Darboux transform at ({x}, {y})")]
    BranchPoint { x: f64, y: f64 },

    #[error("invalid polychromatic data: {0}")]
    InvalidPolychromatic(&'static str),

    #[error("denominator vanishes: minimum {min:e} at ({x}, {y})")]
    VanishingDenominator { min: f64, x: f64, y: f64 },

    #[error("family is the constant mean curvature torus; its profile has no isolated extrema")]
    DegenerateCmc,

    #[error("q vanishes at y = {y}")]
    VanishingQ { y: f64 },

    #[error("Darboux transform is not immersed at ({x}, {y})")]
    DegeneratePoint { x: f64, y: f64 },

    #[error("point is within {distance:e} of the projection pole")]
    NearPole { distance: f64 },
}
