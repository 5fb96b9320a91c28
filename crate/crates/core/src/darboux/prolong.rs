// SPDX-License-Identifier: Apache-2.0

use crate::diffgeo::{
    central_diff, holomorphic_residual, jet, normals_num, ParamSurface, Periods, Section, Target,
    DEFAULT_STEP,
};
use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Largest holomorphicity residual (relative to `max(1, |α|)`) accepted by
/// [`prolong_transform`].
pub const HOLOMORPHIC_TOL: f64 = 1e-4;

/// Relative size below which `α` or `ν` counts as a branch point.
pub const BRANCH_TOL: f64 = 1e-10;

/// The Darboux transform `f̂ = f + αν⁻¹` obtained by prolongation.
#[derive(Debug, Clone)]
pub struct Prolongation<S, A> {
    surface: S,
    section: A,
    step: f64,
    target: Target,
}

/// Prolongs `section` against `surface`.
///
/// `α` is checked for holomorphicity with respect to the left normal of
/// `surface` on a 4×4 grid of the fundamental domain (the unit square when
/// the surface has no periods).
pub fn prolong_transform<S, A>(surface: S, section: A) -> Result<Prolongation<S, A>>
where
    S: ParamSurface,
    A: Section,
{
    let (px, py) = surface.periods().map_or((1.0, 1.0), |p| (p.x, p.y));
    for i in 0..4 {
        for k in 0..4 {
            let x = (f64::from(i) + 0.31) * px / 4.0;
            let y = (f64::from(k) + 0.17) * py / 4.0;
            let normal = |a: f64, b: f64| {
                jet(&surface, a, b, DEFAULT_STEP)
                    .and_then(|j| normals_num(&j))
                    .map_or(Quaternion::ZERO, |(n, _)| n)
            };
            let residual = holomorphic_residual(&section, normal, x, y, DEFAULT_STEP)?;
            let scale = section.eval(x, y).norm().max(1.0);
            if residual > HOLOMORPHIC_TOL * scale {
                return Err(Error::NotHolomorphic { residual });
            }
        }
    }
    Ok(Prolongation {
        surface,
        section,
        step: DEFAULT_STEP,
        target: Target::R4,
    })
}

impl<S: ParamSurface, A: Section> Prolongation<S, A> {
    /// Declares the space the transform is known to lie in.
    pub fn with_target(mut self, target: Target) -> Self {
        self.target = target;
        self
    }

    /// `ν = −f_x⁻¹ α_x` at a sample.
    pub fn nu(&self, x: f64, y: f64) -> Result<Quaternion> {
        let j = jet(&self.surface, x, y, self.step)?;
        let alpha_x = match self.section.partials(x, y) {
            Some((ax, _)) => ax,
            None => central_diff(|t| self.section.eval(t, y), x, self.step),
        };
        Ok(-(j.f_x.inv()? * alpha_x))
    }

    /// Evaluates `f̂`, reporting branch points instead of interpolating.
    pub fn try_eval(&self, x: f64, y: f64) -> Result<Quaternion> {
        let f = self.surface.eval(x, y);
        let alpha = self.section.eval(x, y);
        let nu = self.nu(x, y)?;
        let scale = 1.0 + f.norm();
        if alpha.norm() < BRANCH_TOL * scale || nu.norm() < BRANCH_TOL * scale {
            return Err(Error::BranchPoint { x, y });
        }
        let out = f + alpha * nu.recip();
        if out.is_finite() {
            Ok(out)
        } else {
            Err(Error::NonFinite { x, y })
        }
    }

    /// `T = f̂ − f`.
    pub fn offset(&self, x: f64, y: f64) -> Result<Quaternion> {
        Ok(self.try_eval(x, y)? - self.surface.eval(x, y))
    }
}

impl<S: ParamSurface, A: Section> ParamSurface for Prolongation<S, A> {
    /// Branch points evaluate to NaN; use [`Prolongation::try_eval`] to see them.
    fn eval(&self, x: f64, y: f64) -> Quaternion {
        self.try_eval(x, y)
            .unwrap_or(Quaternion::new(f64::NAN, f64::NAN, f64::NAN, f64::NAN))
    }

    fn periods(&self) -> Option<Periods> {
        // The multiplier of α cancels in αν⁻¹; translations of f carry over.
        self.surface.periods()
    }

    fn target(&self) -> Target {
        self.target
    }
}
