// SPDX-License-Identifier: Apache-2.0

//! Hamiltonian stationary source surfaces and their holomorphic sections.
//!
//! A rectangular torus with parameters `(u, v)` has lattice
//! `Γ = (1/u)ℤ ⊕ (i/v)ℤ`, dual lattice `Γ* = uℤ ⊕ ivℤ` and Lagrangian
//! angle `β = 2π⟨β₀, z⟩` with `β₀ = u − iv`. Its derivative factors as
//! `df = e^{jβ/2} dz g` with `g = 2πρ j e^{πj(ux + vy)}` and scale
//! `ρ = uv / √(u² + v²)`.
//!
//! Holomorphic sections with multiplier `h^{A,B}` are spanned by Fourier
//! monomials `α_δ = e^{jβ/2}(1 − kλ_δ) e_{δ−B} e^{2π⟨A,·⟩}` whose
//! frequencies `δ` lie on a circle of radius `|β₀|/2` about `B`.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::diffgeo::{ParamSurface, Periods, Section, Target};
use crate::error::{Error, Result};
use crate::quat::{e_gamma, real_pairing, ComplexPoint, Quaternion};

/// Default relative tolerance for the spectral circle condition.
pub const SPECTRAL_TOL: f64 = 1e-9;

fn check_positive(value: f64, what: &'static str) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(what))
    }
}

/// The rectangular torus `f = ρ((1/u) e^{2πjux} + i (1/v) e^{2πjvy})` in S³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangularTorus {
    u: f64,
    v: f64,
}

/// Closed-form frame of a rectangular torus or standard cylinder at a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    /// Lagrangian angle.
    pub beta: f64,
    pub g: Quaternion,
    /// Left normal.
    pub n: Quaternion,
    /// Right normal.
    pub r: Quaternion,
    pub f_x: Quaternion,
    pub f_y: Quaternion,
}

impl RectangularTorus {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        check_positive(u, "u must be positive and finite")?;
        check_positive(v, "v must be positive and finite")?;
        Ok(Self { u, v })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    /// `r = |β₀| = √(u² + v²)`.
    pub fn r(&self) -> f64 {
        libm::hypot(self.u, self.v)
    }

    /// Scale `ρ = uv / r`.
    pub fn rho(&self) -> f64 {
        self.u * self.v / self.r()
    }

    /// `β₀ = u − iv`.
    pub fn beta0(&self) -> ComplexPoint {
        ComplexPoint::new(self.u, -self.v)
    }

    /// Generators `1/u` and `i/v` of Γ.
    pub fn lattice(&self) -> [ComplexPoint; 2] {
        [
            ComplexPoint::new(1.0 / self.u, 0.0),
            ComplexPoint::new(0.0, 1.0 / self.v),
        ]
    }

    /// Generators `u` and `iv` of Γ*.
    pub fn dual_lattice(&self) -> [ComplexPoint; 2] {
        [
            ComplexPoint::new(self.u, 0.0),
            ComplexPoint::new(0.0, self.v),
        ]
    }

    pub fn lagrangian_angle(&self, x: f64, y: f64) -> f64 {
        2.0 * PI * real_pairing(self.beta0(), ComplexPoint::new(x, y))
    }

    /// `g = 2πρ j e^{πj(ux + vy)}`.
    pub fn g(&self, x: f64, y: f64) -> Quaternion {
        Quaternion::J * Quaternion::exp_j(PI * (self.u * x + self.v * y)) * (2.0 * PI * self.rho())
    }

    pub fn eval(&self, x: f64, y: f64) -> Quaternion {
        let rho = self.rho();
        let a = Quaternion::exp_j(2.0 * PI * self.u * x) * (rho / self.u);
        let b = Quaternion::I * Quaternion::exp_j(2.0 * PI * self.v * y) * (rho / self.v);
        a + b
    }

    pub fn frame(&self, x: f64, y: f64) -> Frame {
        let (u, v) = (self.u, self.v);
        let beta = self.lagrangian_angle(x, y);
        let g = self.g(x, y);
        let half = Quaternion::exp_j(beta / 2.0);
        Frame {
            beta,
            g,
            n: Quaternion::exp_j(2.0 * PI * (u * x - v * y)) * Quaternion::I,
            r: Quaternion::I * Quaternion::exp_j(2.0 * PI * (u * x + v * y)),
            f_x: half * g,
            f_y: half * Quaternion::I * g,
        }
    }

    /// The constant `H_{S³} = ½(u/v − v/u)`.
    pub fn mean_curvature(&self) -> f64 {
        0.5 * (self.u / self.v - self.v / self.u)
    }
}

impl ParamSurface for RectangularTorus {
    fn eval(&self, x: f64, y: f64) -> Quaternion {
        RectangularTorus::eval(self, x, y)
    }
    fn partials(&self, x: f64, y: f64) -> Option<(Quaternion, Quaternion)> {
        let fr = self.frame(x, y);
        Some((fr.f_x, fr.f_y))
    }
    fn periods(&self) -> Option<Periods> {
        Some(Periods::doubly_periodic(1.0 / self.u, 1.0 / self.v))
    }
    fn target(&self) -> Target {
        Target::S3
    }
}

/// The standard cylinder `f = (1/u) e^{2πjux} + 2πky` in `Span{1, j, k}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardCylinder {
    u: f64,
}

impl StandardCylinder {
    pub fn new(u: f64) -> Result<Self> {
        check_positive(u, "u must be positive and finite")?;
        Ok(Self { u })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// `β₀ = u`.
    pub fn beta0(&self) -> ComplexPoint {
        ComplexPoint::new(self.u, 0.0)
    }

    pub fn eval(&self, x: f64, y: f64) -> Quaternion {
        Quaternion::exp_j(2.0 * PI * self.u * x) / self.u + Quaternion::K * (2.0 * PI * y)
    }

    /// `g = 2πj e^{πjux}`, `N = e^{2πjux} i`, `R = i e^{2πjux}`.
    pub fn frame(&self, x: f64, _y: f64) -> Frame {
        let beta = 2.0 * PI * self.u * x;
        let g = Quaternion::J * Quaternion::exp_j(PI * self.u * x) * (2.0 * PI);
        let half = Quaternion::exp_j(beta / 2.0);
        Frame {
            beta,
            g,
            n: Quaternion::exp_j(beta) * Quaternion::I,
            r: Quaternion::I * Quaternion::exp_j(beta),
            f_x: half * g,
            f_y: half * Quaternion::I * g,
        }
    }
}

impl ParamSurface for StandardCylinder {
    fn eval(&self, x: f64, y: f64) -> Quaternion {
        StandardCylinder::eval(self, x, y)
    }
    fn partials(&self, x: f64, y: f64) -> Option<(Quaternion, Quaternion)> {
        let fr = self.frame(x, y);
        Some((fr.f_x, fr.f_y))
    }
    fn periods(&self) -> Option<Periods> {
        let p = 1.0 / self.u;
        Some(Periods {
            x: p,
            y: p,
            y_translation: Some(Quaternion::K * (2.0 * PI * p)),
        })
    }
    fn target(&self) -> Target {
        Target::R3
    }
}

/// The multiplier `h^{A,B} = e^{2π(⟨A,·⟩ − i⟨B,·⟩)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierData {
    pub a: ComplexPoint,
    pub b: ComplexPoint,
}

impl MultiplierData {
    pub fn with_b(b: ComplexPoint) -> Self {
        Self {
            a: ComplexPoint::ZERO,
            b,
        }
    }

    /// `h_γ` as a complex number.
    pub fn multiplier(&self, gamma: ComplexPoint) -> ComplexPoint {
        let modulus = libm::exp(2.0 * PI * real_pairing(self.a, gamma));
        ComplexPoint::cis(-2.0 * PI * real_pairing(self.b, gamma)) * modulus
    }

    fn require_a0(&self) -> Result<()> {
        if self.a == ComplexPoint::ZERO {
            Ok(())
        } else {
            Err(Error::NonzeroA)
        }
    }
}

/// An admissible frequency `δ = B − (β₀/2) e^{it}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub delta: ComplexPoint,
    /// Angle in `[0, 2π)`.
    pub t: f64,
    /// `λ_δ = (2/β₀)(δ − iA − B)`.
    pub lambda: ComplexPoint,
}

impl SpectralPoint {
    /// Builds the point for `δ` given `β₀` and the multiplier.
    pub fn new(beta0: ComplexPoint, m: &MultiplierData, delta: ComplexPoint) -> Self {
        let lambda = (delta - ComplexPoint::I * m.a - m.b) * 2.0 / beta0;
        let e_it = (m.b - delta) * 2.0 / beta0;
        let mut t = e_it.arg();
        if t < 0.0 {
            t += TAU;
        }
        if t >= TAU {
            t -= TAU;
        }
        Self { delta, t, lambda }
    }

    /// `e^{it}`.
    pub fn e_it(&self) -> ComplexPoint {
        ComplexPoint::cis(self.t)
    }
}

/// All `δ ∈ Γ* + β₀/2` with `|δ − B|² = |β₀|²/4` (A = 0), found by an
/// exhaustive scan of the lattice box around `B`.
///
/// `tol` is relative to `r²`.
pub fn spectral_frequencies(
    torus: &RectangularTorus,
    m: &MultiplierData,
    tol: f64,
) -> Result<Vec<SpectralPoint>> {
    m.require_a0()?;
    let (u, v) = (torus.u, torus.v);
    let r = torus.r();
    let r2 = r * r;
    let offset = torus.beta0() * 0.5;
    // δ = offset + p u + i q v with |Re δ − Re B| ≤ r and |Im δ − Im B| ≤ r.
    let p_lo = libm::ceil((m.b.re - r - offset.re) / u) as i64;
    let p_hi = libm::floor((m.b.re + r - offset.re) / u) as i64;
    let q_lo = libm::ceil((m.b.im - r - offset.im) / v) as i64;
    let q_hi = libm::floor((m.b.im + r - offset.im) / v) as i64;
    let mut out = Vec::new();
    for q in q_lo..=q_hi {
        for p in p_lo..=p_hi {
            let delta = offset + ComplexPoint::new(p as f64 * u, q as f64 * v);
            let gap = (delta - m.b).norm_sqr() - r2 / 4.0;
            if gap.abs() <= tol * r2 {
                out.push(SpectralPoint::new(torus.beta0(), m, delta));
            }
        }
    }
    if out.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    Ok(out)
}

/// `s = √(u² + v²(1 − n²))` with the threshold `u ≥ v√(n² − 1)` enforced.
///
/// Parameters within `1e−9·v` below the threshold, or whose `s²` is at
/// rounding level, are snapped to the boundary `s = 0`.
pub fn bulge_discriminant(u: f64, v: f64, n: u32) -> Result<f64> {
    check_positive(u, "u must be positive and finite")?;
    check_positive(v, "v must be positive and finite")?;
    if n < 2 {
        return Err(Error::InvalidParameter("bulge count n must be at least 2"));
    }
    let nn = f64::from(n) * f64::from(n);
    let s2 = u * u + v * v * (1.0 - nn);
    let rounding = 8.0 * f64::EPSILON * (u * u + v * v * nn);
    if s2.abs() <= rounding {
        return Ok(0.0);
    }
    if s2 < 0.0 {
        let threshold = v * libm::sqrt(nn - 1.0);
        if (u - threshold).abs() < 1e-9 * v {
            return Ok(0.0);
        }
        return Err(Error::BelowThreshold {
            u,
            threshold,
            bound: "v*sqrt(n^2-1)",
        });
    }
    Ok(libm::sqrt(s2))
}

/// The multiplier `h^{0,B}` with `B = β₀/2 + nvi/2 − s/2`.
pub fn bulge_multiplier(torus: &RectangularTorus, n: u32) -> Result<MultiplierData> {
    let s = bulge_discriminant(torus.u, torus.v, n)?;
    let b = torus.beta0() * 0.5 + ComplexPoint::new(-s / 2.0, f64::from(n) * torus.v / 2.0);
    Ok(MultiplierData::with_b(b))
}

/// The two frequencies `δ₊ = β₀/2` and `δ₋ = β₀/2 + nvi` of the bulge multiplier.
pub fn bulge_frequencies(torus: &RectangularTorus, n: u32) -> Result<[SpectralPoint; 2]> {
    let m = bulge_multiplier(torus, n)?;
    let half = torus.beta0() * 0.5;
    let minus = half + ComplexPoint::new(0.0, f64::from(n) * torus.v);
    Ok([
        SpectralPoint::new(torus.beta0(), &m, half),
        SpectralPoint::new(torus.beta0(), &m, minus),
    ])
}

/// `(c₊, s₊, c₋, s₋)` with `c_± = (∓nv² − us)/r²` and `s_± = (±uvn − sv)/r²`,
/// so that `−λ_{δ±} = c_± + i s_±`.
pub fn bulge_cs(u: f64, v: f64, n: u32) -> Result<[f64; 4]> {
    let s = bulge_discriminant(u, v, n)?;
    let n = f64::from(n);
    let r2 = u * u + v * v;
    Ok([
        (-n * v * v - u * s) / r2,
        (u * v * n - s * v) / r2,
        (n * v * v - u * s) / r2,
        (-u * v * n - s * v) / r2,
    ])
}

/// Monochromatic section `α_δ = e^{jβ/2}(1 − kλ_δ) e_{δ−B} e^{2π⟨A,·⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonochromaticSection {
    beta0: ComplexPoint,
    coefficient: Quaternion,
    frequency: ComplexPoint,
    a: ComplexPoint,
}

impl MonochromaticSection {
    /// Section of frequency `p` for a surface with Lagrangian angle `2π⟨β₀, ·⟩`.
    pub fn new(beta0: ComplexPoint, m: &MultiplierData, p: &SpectralPoint) -> Self {
        Self {
            beta0,
            coefficient: Quaternion::ONE - Quaternion::K * p.lambda.in_i(),
            frequency: p.delta - m.b,
            a: m.a,
        }
    }

    /// The constant factor `1 − kλ_δ`.
    pub fn coefficient(&self) -> Quaternion {
        self.coefficient
    }
}

impl Section for MonochromaticSection {
    fn eval(&self, x: f64, y: f64) -> Quaternion {
        let z = ComplexPoint::new(x, y);
        let half_beta = PI * real_pairing(self.beta0, z);
        let damping = libm::exp(2.0 * PI * real_pairing(self.a, z));
        Quaternion::exp_j(half_beta) * self.coefficient * e_gamma(self.frequency, z) * damping
    }

    fn partials(&self, x: f64, y: f64) -> Option<(Quaternion, Quaternion)> {
        let alpha = self.eval(x, y);
        let d = |b: f64, w: f64, a: f64| {
            Quaternion::J * alpha * (PI * b)
                + alpha * Quaternion::I * (2.0 * PI * w)
                + alpha * (2.0 * PI * a)
        };
        Some((
            d(self.beta0.re, self.frequency.re, self.a.re),
            d(self.beta0.im, self.frequency.im, self.a.im),
        ))
    }
}

/// The monochromatic section of a rectangular torus for an admissible `p`.
pub fn monochromatic_section(
    torus: &RectangularTorus,
    m: &MultiplierData,
    p: &SpectralPoint,
) -> Result<MonochromaticSection> {
    let r2 = torus.r() * torus.r();
    let gap = (p.delta - m.b).norm_sqr() - m.a.norm_sqr() - r2 / 4.0;
    if gap.abs() > SPECTRAL_TOL * r2 {
        return Err(Error::InvalidParameter(
            "frequency is not on the spectral circle",
        ));
    }
    Ok(MonochromaticSection::new(torus.beta0(), m, p))
}

/// A finite combination `Σ α_δ m_δ` of monochromatic sections with complex
/// coefficients acting from the right.
#[derive(Debug, Clone, PartialEq)]
pub struct PolychromaticSection {
    terms: Vec<(MonochromaticSection, ComplexPoint)>,
}

impl PolychromaticSection {
    pub fn new(terms: Vec<(MonochromaticSection, ComplexPoint)>) -> Self {
        Self { terms }
    }

    pub fn terms(&self) -> &[(MonochromaticSection, ComplexPoint)] {
        &self.terms
    }
}

impl Section for PolychromaticSection {
    fn eval(&self, x: f64, y: f64) -> Quaternion {
        self.terms.iter().fold(Quaternion::ZERO, |acc, (s, c)| {
            acc + s.eval(x, y) * c.in_i()
        })
    }

    fn partials(&self, x: f64, y: f64) -> Option<(Quaternion, Quaternion)> {
        let mut ax = Quaternion::ZERO;
        let mut ay = Quaternion::ZERO;
        for (s, c) in &self.terms {
            let (sx, sy) = s.partials(x, y)?;
            ax += sx * c.in_i();
            ay += sy * c.in_i();
        }
        Some((ax, ay))
    }
}

/// Multiplier and the two monochromatic sections of a standard cylinder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderSections {
    /// `B = ½(u + ai − √(u² − a²))`.
    pub b: ComplexPoint,
    pub plus: MonochromaticSection,
    pub minus: MonochromaticSection,
    pub points: [SpectralPoint; 2],
}

/// Sections `α_± = (1/u) e^{jπux}(u ± ja − k√(u²−a²)) e^{πi(√(u²−a²) x ∓ ay)}`.
pub fn cylinder_sections(cylinder: &StandardCylinder, a: f64) -> Result<CylinderSections> {
    check_positive(a, "a must be positive and finite")?;
    let u = cylinder.u;
    if a > u {
        return Err(Error::BelowThreshold {
            u,
            threshold: a,
            bound: "a",
        });
    }
    let root = libm::sqrt(u * u - a * a);
    let b = ComplexPoint::new(0.5 * (u - root), 0.5 * a);
    let m = MultiplierData::with_b(b);
    let beta0 = cylinder.beta0();
    let plus = SpectralPoint::new(beta0, &m, ComplexPoint::new(u / 2.0, 0.0));
    let minus = SpectralPoint::new(beta0, &m, ComplexPoint::new(u / 2.0, a));
    Ok(CylinderSections {
        b,
        plus: MonochromaticSection::new(beta0, &m, &plus),
        minus: MonochromaticSection::new(beta0, &m, &minus),
        points: [plus, minus],
    })
}
