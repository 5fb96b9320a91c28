// SPDX-License-Identifier: Apache-2.0

//! Numerical differential geometry of quaternion-valued surfaces.
//!
//! Conventions: the parameter plane carries the complex structure with
//! `∗dα(∂x) = α_y` and `∗dα(∂y) = −α_x`. A conformal immersion satisfies
//! `∗df = N df = −df R`, which at a sample reads `f_y = N f_x = −f_x R`.
//!
//! Everything here works from point evaluations, so it can check the
//! closed-form constructions of [`crate::hamstat`] and [`crate::darboux`]
//! without sharing any of their algebra.

use crate::error::{Error, Result};
use crate::quat::{ComplexPoint, Quaternion};

/// Default finite-difference step for first derivatives.
pub const DEFAULT_STEP: f64 = 1e-5;

/// Default step for differentiating the left normal in the mean-curvature
/// oracle. The normal itself is already a finite-difference quantity, so the
/// outer stencil needs a coarser step than [`DEFAULT_STEP`].
pub const CURVATURE_STEP: f64 = 1e-3;

/// Conformality residual above which curvature is refused.
pub const NON_CONFORMAL_THRESHOLD: f64 = 1e-3;

/// The space a surface is meant to live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// The unit 3-sphere in ℍ.
    S3,
    /// `Span{1, j, k}`.
    R3,
    /// All of ℍ.
    R4,
}

/// Fundamental domain `[0, x) × [0, y)` of a surface.
///
/// With `y_translation` set the surface is only periodic up to that
/// translation in `y`: `f(x, y + py) = f(x, y) + y_translation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Periods {
    pub x: f64,
    pub y: f64,
    pub y_translation: Option<Quaternion>,
}

impl Periods {
    pub fn doubly_periodic(x: f64, y: f64) -> Self {
        Self {
            x,
            y,
            y_translation: None,
        }
    }
}

/// A doubly parametrised map `(x, y) → ℍ`.
pub trait ParamSurface {
    fn eval(&self, x: f64, y: f64) -> Quaternion;

    /// Exact partial derivatives `(f_x, f_y)`, when known in closed form.
    fn partials(&self, _x: f64, _y: f64) -> Option<(Quaternion, Quaternion)> {
        None
    }

    fn periods(&self) -> Option<Periods> {
        None
    }

    fn target(&self) -> Target {
        Target::R4
    }
}

impl<S: ParamSurface + ?Sized> ParamSurface for &S {
    fn eval(&self, x: f64, y: f64) -> Quaternion {
        (**self).eval(x, y)
    }
    fn partials(&self, x: f64, y: f64) -> Option<(Quaternion, Quaternion)> {
        (**self).partials(x, y)
    }
    fn periods(&self) -> Option<Periods> {
        (**self).periods()
    }
    fn target(&self) -> Target {
        (**self).target()
    }
}

/// Adapter turning a closure into a [`ParamSurface`].
#[derive(Clone)]
pub struct FnSurface<F> {
    func: F,
    target: Target,
    periods: Option<Periods>,
}

impl<F: Fn(f64, f64) -> Quaternion> FnSurface<F> {
    pub fn new(func: F, target: Target) -> Self {
        Self {
            func,
            target,
            periods: None,
        }
    }

    pub fn with_periods(mut self, periods: Periods) -> Self {
        self.periods = Some(periods);
        self
    }
}

impl<F: Fn(f64, f64) -> Quaternion> ParamSurface for FnSurface<F> {
    fn eval(&self, x: f64, y: f64) -> Quaternion {
        (self.func)(x, y)
    }
    fn periods(&self) -> Option<Periods> {
        self.periods
    }
    fn target(&self) -> Target {
        self.target
    }
}

/// A quaternion-valued section of the trivial bundle, possibly with a
/// multiplier.
pub trait Section {
    fn eval(&self, x: f64, y: f64) -> Quaternion;

    /// Exact `(α_x, α_y)`, when known in closed form.
    fn partials(&self, _x: f64, _y: f64) -> Option<(Quaternion, Quaternion)> {
        None
    }
}

impl<F: Fn(f64, f64) -> Quaternion> Section for F {
    fn eval(&self, x: f64, y: f64) -> Quaternion {
        self(x, y)
    }
}

/// Value and first partials of a surface at one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetSample {
    pub f: Quaternion,
    pub f_x: Quaternion,
    pub f_y: Quaternion,
    /// Finite-difference step, `0.0` when exact partials were used.
    pub step: f64,
}

/// Fourth-order central difference `(−g(t+2h) + 8g(t+h) − 8g(t−h) + g(t−2h)) / 12h`.
#[inline]
pub fn central_diff<G: Fn(f64) -> Quaternion>(g: G, t: f64, h: f64) -> Quaternion {
    let d1 = g(t + h) - g(t - h);
    let d2 = g(t + 2.0 * h) - g(t - 2.0 * h);
    (d1 * 8.0 - d2) / (12.0 * h)
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(
            "finite-difference step must be positive",
        ))
    }
}

/// Finite-difference jet, ignoring any exact partials the surface offers.
pub fn jet_numeric<S: ParamSurface + ?Sized>(
    surface: &S,
    x: f64,
    y: f64,
    h: f64,
) -> Result<JetSample> {
    check_step(h)?;
    let f = surface.eval(x, y);
    let f_x = central_diff(|t| surface.eval(t, y), x, h);
    let f_y = central_diff(|t| surface.eval(x, t), y, h);
    finite_jet(
        JetSample {
            f,
            f_x,
            f_y,
            step: h,
        },
        x,
        y,
    )
}

/// Jet of `surface` at `(x, y)`; exact partials are used when provided.
pub fn jet<S: ParamSurface + ?Sized>(surface: &S, x: f64, y: f64, h: f64) -> Result<JetSample> {
    check_step(h)?;
    match surface.partials(x, y) {
        Some((f_x, f_y)) => finite_jet(
            JetSample {
                f: surface.eval(x, y),
                f_x,
                f_y,
                step: 0.0,
            },
            x,
            y,
        ),
        None => jet_numeric(surface, x, y, h),
    }
}

fn finite_jet(j: JetSample, x: f64, y: f64) -> Result<JetSample> {
    if j.f.is_finite() && j.f_x.is_finite() && j.f_y.is_finite() {
        Ok(j)
    } else {
        Err(Error::NonFinite { x, y })
    }
}

fn check_immersed(j: &JetSample) -> Result<()> {
    let n = j.f_x.norm();
    if n <= 1e-12 * (1.0 + j.f_y.norm()) {
        return Err(Error::DegenerateJet { norm: n });
    }
    Ok(())
}

/// Left and right normals `N = f_y f_x⁻¹`, `R = −f_x⁻¹ f_y`, unnormalised.
///
/// Both square to `−1` exactly when the sample is conformal.
pub fn normals_num(j: &JetSample) -> Result<(Quaternion, Quaternion)> {
    check_immersed(j)?;
    let fx_inv = j.f_x.recip();
    Ok((j.f_y * fx_inv, -(fx_inv * j.f_y)))
}

/// `| |f_x| − |f_y| | / |f_x| + |⟨f_x, f_y⟩| / |f_x|²`; zero exactly on
/// conformal samples and invariant under rescaling of `f`.
pub fn conformality_residual(j: &JetSample) -> Result<f64> {
    check_immersed(j)?;
    let nx = j.f_x.norm();
    let ny = j.f_y.norm();
    Ok((nx - ny).abs() / nx + j.f_x.dot(j.f_y).abs() / (nx * nx))
}

/// `|N n R + n|`: vanishes when `n` lies in the normal bundle.
pub fn normal_bundle_residual(n_left: Quaternion, r_right: Quaternion, n: Quaternion) -> f64 {
    (n_left * n * r_right + n).norm()
}

/// Output of [`mean_curvature_num`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanCurvature {
    /// `H_{S³} = Re(f H)` or the scalar of `H_{ℝ³} = −H i`.
    pub value: f64,
    /// The quaternion `H` defined by `(dN)' = −df H`.
    pub h: Quaternion,
    /// Conformality residual at the sample; below
    /// [`NON_CONFORMAL_THRESHOLD`] but possibly nonzero.
    pub conformality: f64,
}

/// Independent mean-curvature oracle.
///
/// The left normal is recomputed from jets on a five-point stencil of step
/// `h` in each direction, then `(dN)'(∂x) = ½(N_x − N N_y)` and
/// `H = −f_x⁻¹ (dN)'(∂x)`.
pub fn mean_curvature_num<S: ParamSurface + ?Sized>(
    surface: &S,
    x: f64,
    y: f64,
    h: f64,
) -> Result<MeanCurvature> {
    let target = surface.target();
    if target == Target::R4 {
        return Err(Error::UnsupportedTarget);
    }
    check_step(h)?;
    let j0 = jet(surface, x, y, DEFAULT_STEP)?;
    let conformality = conformality_residual(&j0)?;
    if conformality > NON_CONFORMAL_THRESHOLD {
        return Err(Error::NonConformal {
            x,
            y,
            residual: conformality,
            threshold: NON_CONFORMAL_THRESHOLD,
        });
    }
    let normal = |a: f64, b: f64| -> Quaternion {
        match jet(surface, a, b, DEFAULT_STEP).and_then(|j| normals_num(&j)) {
            Ok((n, _)) => n,
            Err(_) => Quaternion::new(f64::NAN, f64::NAN, f64::NAN, f64::NAN),
        }
    };
    let (n0, _) = normals_num(&j0)?;
    let n_x = central_diff(|t| normal(t, y), x, h);
    let n_y = central_diff(|t| normal(x, t), y, h);
    if !(n_x.is_finite() && n_y.is_finite()) {
        return Err(Error::NonFinite { x, y });
    }
    let dn_10 = (n_x - n0 * n_y) * 0.5;
    let hq = -(j0.f_x.recip() * dn_10);
    let value = match target {
        Target::S3 => (j0.f * hq).re(),
        _ => (-(hq * Quaternion::I)).re(),
    };
    Ok(MeanCurvature {
        value,
        h: hq,
        conformality,
    })
}

/// `|½(α_x + N α_y)|`, the pointwise size of `Dα(∂x)`.
pub fn holomorphic_residual<A, N>(section: &A, normal: N, x: f64, y: f64, h: f64) -> Result<f64>
where
    A: Section + ?Sized,
    N: Fn(f64, f64) -> Quaternion,
{
    check_step(h)?;
    let a_x = central_diff(|t| section.eval(t, y), x, h);
    let a_y = central_diff(|t| section.eval(x, t), y, h);
    let n = normal(x, y);
    let r = ((a_x + n * a_y) * 0.5).norm();
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::NonFinite { x, y })
    }
}

/// `sup |α(z + γ) − α(z) h|` over the given samples.
pub fn multiplier_residual<A: Section + ?Sized>(
    section: &A,
    gamma: ComplexPoint,
    h_expected: ComplexPoint,
    samples: &[ComplexPoint],
) -> f64 {
    let h = h_expected.in_i();
    samples
        .iter()
        .map(|z| {
            let shifted = section.eval(z.re + gamma.re, z.im + gamma.im);
            (shifted - section.eval(z.re, z.im) * h).norm()
        })
        .fold(0.0, f64::max)
}
