// SPDX-License-Identifier: Apache-2.0

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use super::poly::PolychromaticData;
use super::CMC_TOL;
use crate::diffgeo::{ParamSurface, Periods, Target};
use crate::error::{Error, Result};
use crate::hamstat::{
    bulge_discriminant, bulge_frequencies, bulge_multiplier, monochromatic_section,
    PolychromaticSection, RectangularTorus,
};
use crate::quat::{ComplexPoint, Quaternion};

/// Grid size per period used to certify `R̂ > 0`.
const DENOMINATOR_GRID: usize = 4096;

/// The n-bulge tori of revolution: polychromatic Darboux transforms of the
/// rectangular torus `(u, v)` for the multiplier with frequencies
/// `δ₊ = β₀/2`, `δ₋ = β₀/2 + nvi` and weights `m₊ = m₋`.
///
/// In closed form `f̂ = f + e^{jβ/2} τ g` with `τ = τ₀ + iτ₁`,
/// `τ₀ ∈ jℝ` and `τ₁ ∈ Span{1, j}` depending on `y` only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BulgeTorusFamily {
    torus: RectangularTorus,
    n: u32,
    s: f64,
    denominator: DenominatorBound,
}

/// The two components of `τ = τ₀ + iτ₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tau {
    pub t0: Quaternion,
    pub t1: Quaternion,
}

impl Tau {
    pub fn quaternion(&self) -> Quaternion {
        self.t0 + Quaternion::I * self.t1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.t0.norm_sqr() + self.t1.norm_sqr()
    }
}

/// Certified minimum of `R̂` over one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenominatorBound {
    pub min: f64,
    pub argmin: f64,
    pub max: f64,
}

/// `Ĥ_{S³}` at `y = 0` and half a bulge later, and the CMC classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanCurvatureSpecial {
    pub h0: f64,
    pub h_half: f64,
    pub cmc: bool,
}

impl BulgeTorusFamily {
    pub fn new(u: f64, v: f64, n: u32) -> Result<Self> {
        let torus = RectangularTorus::new(u, v)?;
        let s = bulge_discriminant(u, v, n)?;
        let mut family = Self {
            torus,
            n,
            s,
            denominator: DenominatorBound {
                min: 0.0,
                argmin: 0.0,
                max: 0.0,
            },
        };
        family.denominator = family.certify_denominator()?;
        Ok(family)
    }

    /// The same surface up to the reparametrisation `ẑ = vz`: parameters
    /// `(u/v, 1)`.
    pub fn normalized(u: f64, v: f64, n: u32) -> Result<Self> {
        Self::new(u / v, 1.0, n)
    }

    pub fn u(&self) -> f64 {
        self.torus.u()
    }

    pub fn v(&self) -> f64 {
        self.torus.v()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn nf(&self) -> f64 {
        f64::from(self.n)
    }

    /// `s = √(u² + v²(1 − n²))`.
    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn r(&self) -> f64 {
        self.torus.r()
    }

    pub fn rho(&self) -> f64 {
        self.torus.rho()
    }

    pub fn torus(&self) -> &RectangularTorus {
        &self.torus
    }

    /// `q̃ = 2r² − n²v²`.
    pub fn q_tilde(&self) -> f64 {
        let (r, v, n) = (self.r(), self.v(), self.nf());
        2.0 * r * r - n * n * v * v
    }

    /// `R̂(0) = 2u² + v²(1 − n²)(2 − n²)`.
    pub fn r_tilde0(&self) -> f64 {
        let (u, v, n2) = (self.u(), self.v(), self.nf() * self.nf());
        2.0 * u * u + v * v * (1.0 - n2) * (2.0 - n2)
    }

    /// `2u² + v²(1 − n²)`, so that `R̂` at half a bulge is `n² R̃₁`.
    pub fn r_tilde1(&self) -> f64 {
        let (u, v, n2) = (self.u(), self.v(), self.nf() * self.nf());
        2.0 * u * u + v * v * (1.0 - n2)
    }

    /// Whether this is the constant mean curvature member `u = v√(n² − 1)`.
    pub fn is_cmc(&self) -> bool {
        let threshold = self.v() * libm::sqrt(self.nf() * self.nf() - 1.0);
        self.s == 0.0 || (self.u() - threshold).abs() < CMC_TOL * self.v()
    }

    /// `ỹ = 2πnvy`.
    pub fn y_tilde(&self, y: f64) -> f64 {
        2.0 * PI * self.nf() * self.v() * y
    }

    fn rhat_angle(&self, yt: f64) -> f64 {
        let (u, v, n, s) = (self.u(), self.v(), self.nf(), self.s);
        let n2 = n * n;
        let (sin, cos) = libm::sincos(yt);
        u * u * (1.0 + n2) + v * v * (1.0 - n2) + (1.0 - n2) * (s * s * cos - s * v * n * sin)
    }

    /// `R̂(y) = u²(1 + n²) + v²(1 − n²) + (1 − n²)(s² cos ỹ − svn sin ỹ)`.
    pub fn rhat(&self, y: f64) -> f64 {
        self.rhat_angle(self.y_tilde(y))
    }

    /// The certified bound on `R̂` computed at construction.
    pub fn denominator_bound(&self) -> DenominatorBound {
        self.denominator
    }

    fn certify_denominator(&self) -> Result<DenominatorBound> {
        let step = TAU / DENOMINATOR_GRID as f64;
        let values: Vec<f64> = (0..DENOMINATOR_GRID)
            .map(|i| self.rhat_angle(step * i as f64))
            .collect();
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut best = values
            .iter()
            .enumerate()
            .fold((f64::INFINITY, 0.0), |acc, (i, &r)| {
                if r < acc.0 {
                    (r, step * i as f64)
                } else {
                    acc
                }
            });
        for i in 0..DENOMINATOR_GRID {
            let prev = values[(i + DENOMINATOR_GRID - 1) % DENOMINATOR_GRID];
            let next = values[(i + 1) % DENOMINATOR_GRID];
            let r = values[i];
            if r <= prev && r <= next {
                let c = step * i as f64;
                let (m, at) = golden_min(|t| self.rhat_angle(t), c - step, c + step);
                if m < best.0 {
                    best = (m, at);
                }
            }
        }
        let argmin = best.1 / (2.0 * PI * self.nf() * self.v());
        if !(best.0 > 0.0) {
            return Err(Error::VanishingDenominator {
                min: best.0,
                x: 0.0,
                y: argmin,
            });
        }
        Ok(DenominatorBound {
            min: best.0,
            argmin,
            max,
        })
    }

    /// `τ₀ = j un² / (πR̂)` and
    /// `τ₁ = [n(snv cos ỹ + s² sin ỹ) + j(s² + s² cos ỹ − svn sin ỹ)] / (πvR̂)`.
    pub fn tau(&self, y: f64) -> Tau {
        let (u, v, n, s) = (self.u(), self.v(), self.nf(), self.s);
        let yt = self.y_tilde(y);
        let (sin, cos) = libm::sincos(yt);
        let rh = self.rhat_angle(yt);
        let t0 = Quaternion::J * (u * n * n / (PI * rh));
        let t1 = Quaternion::new(
            n * (s * n * v * cos + s * s * sin),
            0.0,
            s * s + s * s * cos - s * v * n * sin,
            0.0,
        ) / (PI * v * rh);
        Tau { t0, t1 }
    }

    /// `σ = −(1/2π)(j/u + k/v)`, so that `f = e^{jβ/2} σ g`.
    pub fn sigma(&self) -> Quaternion {
        Quaternion::pure(0.0, 1.0 / self.u(), 1.0 / self.v()) * (-1.0 / (2.0 * PI))
    }

    /// `τ̂ = τ + σ`, so that `f̂ = e^{jβ/2} τ̂ g`.
    pub fn tau_hat(&self, y: f64) -> Quaternion {
        self.tau(y).quaternion() + self.sigma()
    }

    /// `q = 1 − 2u²n²/R̂`, with `f̂_x = e^{jβ/2} q g`.
    pub fn q(&self, y: f64) -> f64 {
        let (u, n) = (self.u(), self.nf());
        1.0 - 2.0 * u * u * n * n / self.rhat(y)
    }

    /// `T = e^{jβ/2} τ g`.
    pub fn offset(&self, x: f64, y: f64) -> Quaternion {
        let half = Quaternion::exp_j(self.torus.lagrangian_angle(x, y) / 2.0);
        half * self.tau(y).quaternion() * self.torus.g(x, y)
    }

    pub fn eval(&self, x: f64, y: f64) -> Quaternion {
        self.torus.eval(x, y) + self.offset(x, y)
    }

    /// `(κ₀, κ₁)` with `f̂ = e^{2πjux} κ₀ + i e^{2πjvy} κ₁`; `κ₀` is real and
    /// `κ₁ ∈ Span{1, j}`.
    pub fn revolution_profiles(&self, y: f64) -> (f64, Quaternion) {
        let tau = self.tau(y);
        let rho = self.rho();
        let k0 = (tau.t0 * Quaternion::J * (2.0 * PI) + Quaternion::real(1.0 / self.u())) * rho;
        let k1 = (tau.t1 * Quaternion::J * (2.0 * PI) + Quaternion::real(1.0 / self.v())) * rho;
        (k0.w, k1)
    }

    /// Profile `κ₀ = ρ(1/u − 2un²/R̂)` alone.
    pub fn kappa0(&self, y: f64) -> f64 {
        self.revolution_profiles(y).0
    }

    /// The `2n` critical points
    /// `y_k = (1/2nv)((1/π) arctan(−vn/s) + k)` of `κ₀`, sorted.
    pub fn extrema(&self) -> Result<Vec<f64>> {
        if self.is_cmc() {
            return Err(Error::DegenerateCmc);
        }
        let (v, n, s) = (self.v(), self.nf(), self.s);
        let base = libm::atan(-v * n / s) / PI;
        Ok((0..2 * self.n)
            .map(|k| (base + f64::from(k)) / (2.0 * n * v))
            .collect())
    }

    /// `Ĥ_{S³} = (1/(π|τ|²)) Im(τ₀/v − τ₁/u) + (1/2q)(v/u + u/v)`, where `Im`
    /// is the `j`-component on `Span{1, j}`.
    pub fn mean_curvature_closed(&self, y: f64) -> Result<f64> {
        let (u, v) = (self.u(), self.v());
        let tau = self.tau(y);
        let q = self.q(y);
        if q.abs() < 1e-14 {
            return Err(Error::VanishingQ { y });
        }
        let im = tau.t0.y / v - tau.t1.y / u;
        Ok(im / (PI * tau.norm_sqr()) + (v / u + u / v) / (2.0 * q))
    }

    /// `Ĥ_{S³}` at `y = 0` and at `y = 1/(2nv)` (where `ỹ = π`).
    pub fn mean_curvature_special(&self) -> Result<MeanCurvatureSpecial> {
        let half = 1.0 / (2.0 * self.nf() * self.v());
        Ok(MeanCurvatureSpecial {
            h0: self.mean_curvature_closed(0.0)?,
            h_half: self.mean_curvature_closed(half)?,
            cmc: self.is_cmc(),
        })
    }

    /// `Ĥ_{S³} = Re(f̂ Ĥ)` assembled from the transformed frame:
    /// `Ĥ = −T⁻¹N̂ + f̂_x⁻¹(T r_x + N̂ f̂_x) T⁻¹` with
    /// `N̂ = e^{jβ/2} τ i τ⁻¹ e^{−jβ/2}`, `f̂_x = e^{jβ/2} q g` and
    /// `r_x = π g⁻¹ j(ui − v) g`.
    pub fn hat_h_via_frame(&self, x: f64, y: f64) -> Result<f64> {
        let (u, v) = (self.u(), self.v());
        let tau = self.tau(y).quaternion();
        let q = self.q(y);
        if tau.norm() < 1e-14 || q.abs() < 1e-14 {
            return Err(Error::DegeneratePoint { x, y });
        }
        let half = Quaternion::exp_j(self.torus.lagrangian_angle(x, y) / 2.0);
        let g = self.torus.g(x, y);
        let t = half * tau * g;
        let t_inv = t.inv()?;
        let f_hat = self.torus.eval(x, y) + t;
        let n_hat = half * tau * Quaternion::I * tau.inv()? * half.conj();
        let f_hat_x = half * g * q;
        let r_x = g.inv()? * Quaternion::J * Quaternion::new(-v, u, 0.0, 0.0) * g * PI;
        let h_hat = -(t_inv * n_hat) + f_hat_x.inv()? * (t * r_x + n_hat * f_hat_x) * t_inv;
        Ok((f_hat * h_hat).re())
    }

    /// The polychromatic section `α₊ + α₋` whose prolongation is this family.
    pub fn section(&self) -> Result<PolychromaticSection> {
        let m = bulge_multiplier(&self.torus, self.n)?;
        let [p, q] = bulge_frequencies(&self.torus, self.n)?;
        Ok(PolychromaticSection::new(vec![
            (
                monochromatic_section(&self.torus, &m, &p)?,
                ComplexPoint::ONE,
            ),
            (
                monochromatic_section(&self.torus, &m, &q)?,
                ComplexPoint::ONE,
            ),
        ]))
    }

    /// Frequencies `{δ₊, δ₋}` with weights `m₊ = m₋ = m`.
    pub fn polychromatic_data(&self, m: ComplexPoint) -> Result<PolychromaticData> {
        let [p, q] = bulge_frequencies(&self.torus, self.n)?;
        PolychromaticData::new(vec![p, q], vec![m, m])
    }
}

impl ParamSurface for BulgeTorusFamily {
    fn eval(&self, x: f64, y: f64) -> Quaternion {
        BulgeTorusFamily::eval(self, x, y)
    }
    fn periods(&self) -> Option<Periods> {
        self.torus.periods()
    }
    fn target(&self) -> Target {
        Target::S3
    }
}

/// Golden-section minimisation of a unimodal function on `[a, b]`.
pub(crate) fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let t = 0.5 * (a + b);
    (f(t), t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(u: f64, v: f64, n: u32) -> BulgeTorusFamily {
        BulgeTorusFamily::new(u, v, n).unwrap()
    }

    #[test]
    fn derived_constants_for_2_1_2() {
        let f = fam(2.0, 1.0, 2);
        assert_eq!(f.s(), 1.0);
        assert!((f.q_tilde() - 6.0).abs() < 1e-14);
        assert_eq!(f.r_tilde0(), 14.0);
        assert_eq!(f.r_tilde1(), 5.0);
        assert!((f.rhat(0.0) - 14.0).abs() < 1e-13);
        // At ỹ = π the denominator is n² R̃₁.
        assert!((f.rhat(0.25) - 20.0).abs() < 1e-13);
    }

    #[test]
    fn tau_at_zero() {
        let f = fam(2.0, 1.0, 2);
        let tau = f.tau(0.0);
        assert!(tau.t0.approx_eq(Quaternion::J * (4.0 / (7.0 * PI)), 1e-15));
        assert!(tau
            .t1
            .approx_eq(Quaternion::new(4.0, 0.0, 2.0, 0.0) / (14.0 * PI), 1e-15));
    }

    #[test]
    fn tau_lies_in_the_right_subspaces() {
        let f = fam(3.3, 1.2, 2);
        for k in 0..40 {
            let tau = f.tau(0.023 * f64::from(k));
            assert!(tau.t0.w == 0.0 && tau.t0.x == 0.0 && tau.t0.z == 0.0);
            assert!(tau.t1.in_span_1j(0.0));
        }
    }

    #[test]
    fn kappa0_at_zero() {
        let f = fam(2.0, 1.0, 2);
        let expected = -9.0 / (7.0 * 5f64.sqrt());
        assert!((f.kappa0(0.0) - expected).abs() < 1e-15);
    }

    #[test]
    fn extrema_for_2_1_2() {
        let f = fam(2.0, 1.0, 2);
        let ys = f.extrema().unwrap();
        assert_eq!(ys.len(), 4);
        assert!((ys[0] - libm::atan(-2.0) / (4.0 * PI)).abs() < 1e-16);
        assert!((ys[0] + 0.0881).abs() < 1e-4);
        for w in ys.windows(2) {
            assert!((w[1] - w[0] - 0.25).abs() < 1e-15);
        }
        assert_eq!(
            fam(3f64.sqrt(), 1.0, 2).extrema(),
            Err(Error::DegenerateCmc)
        );
    }

    #[test]
    fn threshold_handling() {
        assert!(matches!(
            BulgeTorusFamily::new(1.0, 1.0, 2),
            Err(Error::BelowThreshold { .. })
        ));
        let f = fam(3f64.sqrt(), 1.0, 2);
        assert_eq!(f.s(), 0.0);
        assert!(f.is_cmc());
        assert!(!fam(2.0, 1.0, 2).is_cmc());
        assert!(!fam(3.0, 1.0, 3).is_cmc());
    }

    #[test]
    fn normalized_reparametrisation() {
        let a = fam(4.0, 2.0, 2);
        let b = BulgeTorusFamily::normalized(4.0, 2.0, 2).unwrap();
        assert_eq!((b.u(), b.v()), (2.0, 1.0));
        for k in 0..10 {
            let (x, y) = (0.03 * f64::from(k), 0.07 * f64::from(k));
            assert!(a.eval(x, y).approx_eq(b.eval(2.0 * x, 2.0 * y), 1e-13));
        }
    }

    #[test]
    fn denominator_bound_matches_amplitude() {
        // R̂ = C + (1 − n²)·s·r·cos(ỹ + φ), so its minimum is C − (n² − 1) s r.
        for (u, v, n) in [
            (2.0, 1.0, 2u32),
            (2.9, 1.0, 3),
            (6.3, 1.0, 4),
            (1.8, 1.0, 2),
        ] {
            let f = fam(u, v, n);
            let n2 = f64::from(n * n);
            let c = u * u * (1.0 + n2) + v * v * (1.0 - n2);
            let exact = c - (n2 - 1.0) * f.s() * f.r();
            let b = f.denominator_bound();
            assert!(
                (b.min - exact).abs() < 1e-10 * exact.abs().max(1.0),
                "{u} {n}"
            );
            assert!((f.rhat(b.argmin) - b.min).abs() < 1e-10);
        }
    }

    #[test]
    fn golden_min_finds_parabola_vertex() {
        let (m, at) = golden_min(|t| (t - 0.3) * (t - 0.3) + 2.0, 0.0, 1.0);
        assert!((at - 0.3).abs() < 1e-7);
        assert!((m - 2.0).abs() < 1e-14);
    }
}
