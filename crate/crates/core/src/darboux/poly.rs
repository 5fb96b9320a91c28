// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::diffgeo::{ParamSurface, Periods, Target};
use crate::error::{Error, Result};
use crate::hamstat::{RectangularTorus, SpectralPoint};
use crate::quat::{e_gamma, real_pairing, ComplexPoint, Quaternion};

/// Samples per axis when certifying the denominator on the fundamental domain.
const DENOMINATOR_GRID: usize = 64;

/// Admissible frequencies `I_B` with one complex weight `m_t` per frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct PolychromaticData {
    points: Vec<SpectralPoint>,
    m: Vec<ComplexPoint>,
}

impl PolychromaticData {
    pub fn new(points: Vec<SpectralPoint>, m: Vec<ComplexPoint>) -> Result<Self> {
        if points.len() != m.len() {
            return Err(Error::InvalidPolychromatic(
                "one weight per frequency is required",
            ));
        }
        if points.len() < 2 {
            return Err(Error::InvalidPolychromatic(
                "at least two frequencies are required",
            ));
        }
        // I_B = {0, π} is excluded: sin t vanishes on both.
        if points.iter().all(|p| libm::sin(p.t).abs() < 1e-12) {
            return Err(Error::InvalidPolychromatic(
                "frequency angles must not be {0, pi}",
            ));
        }
        Ok(Self { points, m })
    }

    pub fn points(&self) -> &[SpectralPoint] {
        &self.points
    }

    pub fn weights(&self) -> &[ComplexPoint] {
        &self.m
    }
}

/// The polychromatic Darboux transform
/// `f̂ = f + e^{jβ/2}(Σ_{s,t} (1 + ke^{is}) m_s m̄_t e_{δ_s − δ_t} (1 + ke^{it}) sin t) (Rπβ̄₀)⁻¹ g`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolychromaticTransform {
    torus: RectangularTorus,
    data: PolychromaticData,
    target: Target,
}

/// Builds the transform after certifying that `R` does not vanish on a
/// 64×64 grid of the fundamental domain.
///
/// The result reports [`Target::S3`] when it stays on the unit sphere on
/// that grid, [`Target::R4`] otherwise.
pub fn polychromatic_transform(
    torus: &RectangularTorus,
    data: &PolychromaticData,
) -> Result<PolychromaticTransform> {
    let mut out = PolychromaticTransform {
        torus: *torus,
        data: data.clone(),
        target: Target::R4,
    };
    let (px, py) = (1.0 / torus.u(), 1.0 / torus.v());
    let mut min = (f64::INFINITY, 0.0, 0.0);
    let mut max = 0.0f64;
    let mut sphere = 0.0f64;
    for i in 0..DENOMINATOR_GRID {
        for k in 0..DENOMINATOR_GRID {
            let x = px * i as f64 / DENOMINATOR_GRID as f64;
            let y = py * k as f64 / DENOMINATOR_GRID as f64;
            let r = out.denominator(x, y);
            if r < min.0 {
                min = (r, x, y);
            }
            max = max.max(r);
            sphere = sphere.max((out.eval(x, y).norm() - 1.0).abs());
        }
    }
    if !(min.0 > 1e-10 * max) {
        return Err(Error::VanishingDenominator {
            min: min.0,
            x: min.1,
            y: min.2,
        });
    }
    if sphere < 1e-9 {
        out.target = Target::S3;
    }
    Ok(out)
}

impl PolychromaticTransform {
    /// `R = |Σ m_t sin t e_δ|² + |Σ m_t e^{it} sin t e_δ|²`.
    pub fn denominator(&self, x: f64, y: f64) -> f64 {
        let z = ComplexPoint::new(x, y);
        let mut first = ComplexPoint::ZERO;
        let mut second = ComplexPoint::ZERO;
        for (p, m) in self.data.points.iter().zip(&self.data.m) {
            let e = ComplexPoint::cis(2.0 * PI * real_pairing(p.delta, z));
            let w = *m * e * libm::sin(p.t);
            first = first + w;
            second = second + p.e_it() * w;
        }
        first.norm_sqr() + second.norm_sqr()
    }

    /// `T = f̂ − f`.
    pub fn offset(&self, x: f64, y: f64) -> Quaternion {
        let z = ComplexPoint::new(x, y);
        let k = Quaternion::K;
        let mut sum = Quaternion::ZERO;
        for (ps, ms) in self.data.points.iter().zip(&self.data.m) {
            let left = Quaternion::ONE + k * ps.e_it().in_i();
            for (pt, mt) in self.data.points.iter().zip(&self.data.m) {
                let right = Quaternion::ONE + k * pt.e_it().in_i();
                let weight = (*ms * mt.conj()).in_i();
                let wave = e_gamma(ps.delta - pt.delta, z);
                sum += left * weight * wave * right * libm::sin(pt.t);
            }
        }
        let scale = ComplexPoint::ONE / (self.torus.beta0().conj() * (self.denominator(x, y) * PI));
        let half = Quaternion::exp_j(self.torus.lagrangian_angle(x, y) / 2.0);
        half * sum * scale.in_i() * self.torus.g(x, y)
    }

    pub fn torus(&self) -> &RectangularTorus {
        &self.torus
    }
}

impl ParamSurface for PolychromaticTransform {
    fn eval(&self, x: f64, y: f64) -> Quaternion {
        self.torus.eval(x, y) + self.offset(x, y)
    }

    fn periods(&self) -> Option<Periods> {
        self.torus.periods()
    }

    fn target(&self) -> Target {
        self.target
    }
}
