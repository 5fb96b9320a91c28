// SPDX-License-Identifier: Apache-2.0

use alloc::vec;
use core::f64::consts::{PI, TAU};

use super::bulge::golden_min;
use crate::diffgeo::{mean_curvature_num, ParamSurface, Periods, Target, CURVATURE_STEP};
use crate::error::{Error, Result};
use crate::hamstat::{cylinder_sections, PolychromaticSection, StandardCylinder};
use crate::quat::{ComplexPoint, Quaternion};

/// Largest spread of the sampled mean curvature still counted as constant.
pub const CYLINDER_CMC_TOL: f64 = 1e-5;

/// Cylinders of revolution `f̂ = 2(−e^{2πjux} τ₀ + k τ₁)` obtained from the
/// standard cylinder `(u)` with the sections of parameter `a ≤ u`.
///
/// Here `ỹ = 2πay`; `f̂` is invariant under `x → x + 1/u` and picks up the
/// translation `(2π/a) k` under `y → y + 1/a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderFamily {
    cylinder: StandardCylinder,
    a: f64,
    root: f64,
}

/// `τ₀`, `τ₁` and `R̂` at one value of `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderTau {
    pub t0: f64,
    pub t1: f64,
    pub rhat: f64,
}

/// Mean curvature sampled at `y = 0` and `y = 1/(4a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmcReport {
    pub h0: f64,
    pub h_quarter: f64,
    pub cmc: bool,
}

impl CmcReport {
    pub fn spread(&self) -> f64 {
        (self.h0 - self.h_quarter).abs()
    }
}

impl CylinderFamily {
    pub fn new(u: f64, a: f64) -> Result<Self> {
        let cylinder = StandardCylinder::new(u)?;
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidParameter("a must be positive and finite"));
        }
        if a > u {
            return Err(Error::BelowThreshold {
                u,
                threshold: a,
                bound: "a",
            });
        }
        let family = Self {
            cylinder,
            a,
            root: libm::sqrt(u * u - a * a),
        };
        let (min, at) = family.denominator_min();
        if !(min > 0.0) {
            return Err(Error::VanishingDenominator { min, x: 0.0, y: at });
        }
        Ok(family)
    }

    pub fn u(&self) -> f64 {
        self.cylinder.u()
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn cylinder(&self) -> &StandardCylinder {
        &self.cylinder
    }

    pub fn is_round(&self) -> bool {
        self.root == 0.0
    }

    fn rhat_angle(&self, yt: f64) -> f64 {
        let (u, a) = (self.u(), self.a);
        let (sin, cos) = libm::sincos(yt);
        1.0 - (1.0 - a * a / (u * u)) * cos + a / (u * u) * self.root * sin
    }

    /// Grid minimum of `R̂` over one period, refined by golden section.
    fn denominator_min(&self) -> (f64, f64) {
        const GRID: usize = 1024;
        let step = TAU / GRID as f64;
        let (mut best, mut at) = (f64::INFINITY, 0.0);
        for i in 0..GRID {
            let r = self.rhat_angle(step * i as f64);
            if r < best {
                best = r;
                at = step * i as f64;
            }
        }
        let (m, t) = golden_min(|t| self.rhat_angle(t), at - step, at + step);
        if m < best {
            best = m;
            at = t;
        }
        (best, at / (2.0 * PI * self.a))
    }

    /// `τ₀ = (1/u)(−½ + 1/R̂)`, `τ₁ = πy + (sin ỹ(1 − a²/u²) + cos ỹ (a/u²)√(u² − a²)) / (aR̂)`,
    /// `R̂ = 1 − (1 − a²/u²) cos ỹ + (a/u²)√(u² − a²) sin ỹ`.
    pub fn tau(&self, y: f64) -> CylinderTau {
        let (u, a) = (self.u(), self.a);
        let yt = 2.0 * PI * a * y;
        let (sin, cos) = libm::sincos(yt);
        let rhat = self.rhat_angle(yt);
        let t0 = (-0.5 + 1.0 / rhat) / u;
        let t1 =
            PI * y + (sin * (1.0 - a * a / (u * u)) + cos * a / (u * u) * self.root) / (a * rhat);
        CylinderTau { t0, t1, rhat }
    }

    pub fn rhat(&self, y: f64) -> f64 {
        self.rhat_angle(2.0 * PI * self.a * y)
    }

    pub fn eval(&self, x: f64, y: f64) -> Quaternion {
        let tau = self.tau(y);
        let rot = Quaternion::exp_j(2.0 * PI * self.u() * x);
        (Quaternion::K * tau.t1 - rot * tau.t0) * 2.0
    }

    /// The section `α₊ + α₋` whose prolongation is this family.
    pub fn section(&self) -> Result<PolychromaticSection> {
        let cs = cylinder_sections(&self.cylinder, self.a)?;
        Ok(PolychromaticSection::new(vec![
            (cs.plus, ComplexPoint::ONE),
            (cs.minus, ComplexPoint::ONE),
        ]))
    }

    /// Compares the numerical mean curvature at `y = 0` and `y = 1/(4a)`.
    pub fn cmc_test(&self) -> Result<CmcReport> {
        let h0 = mean_curvature_num(self, 0.0, 0.0, CURVATURE_STEP)?.value;
        let h_quarter = mean_curvature_num(self, 0.0, 0.25 / self.a, CURVATURE_STEP)?.value;
        Ok(CmcReport {
            h0,
            h_quarter,
            cmc: (h0 - h_quarter).abs() < CYLINDER_CMC_TOL,
        })
    }
}

impl ParamSurface for CylinderFamily {
    fn eval(&self, x: f64, y: f64) -> Quaternion {
        CylinderFamily::eval(self, x, y)
    }
    fn periods(&self) -> Option<Periods> {
        Some(Periods {
            x: 1.0 / self.u(),
            y: 1.0 / self.a,
            y_translation: Some(Quaternion::K * (2.0 * PI / self.a)),
        })
    }
    fn target(&self) -> Target {
        Target::R3
    }
}
