// SPDX-License-Identifier: Apache-2.0

//! Quaternion and complex arithmetic.
//!
//! Multiplication follows the Hamilton convention `i² = j² = k² = ijk = −1`,
//! so `ij = k`, `jk = i`, `ki = j`. Every sign in the surface formulas of
//! this crate depends on that choice.
//!
//! The complex plane appears in two roles: as the parameter domain
//! (`z = x + iy`, lattice points, frequencies) and inside ℍ as `Span{1, i}`
//! or `Span{1, j}`. [`ComplexPoint`] is kept separate from [`Quaternion`] and
//! is embedded explicitly with [`ComplexPoint::in_i`] or
//! [`ComplexPoint::in_j`].

use core::f64::consts::PI;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Default absolute tolerance for unit-scale comparisons.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Scalar-first quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Pure imaginary quaternion `x i + y j + z k`.
    #[inline]
    pub const fn pure(x: f64, y: f64, z: f64) -> Self {
        Self::new(0.0, x, y, z)
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part, as a pure quaternion.
    #[inline]
    pub fn im(self) -> Self {
        Self::pure(self.x, self.y, self.z)
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    /// Euclidean inner product on ℍ = ℝ⁴, equal to `Re(a · conj(b))`.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Multiplicative inverse `conj(q) / |q|²`.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self.conj() / n2)
    }

    /// Inverse without the zero check; yields non-finite components for `0`.
    #[inline]
    pub fn recip(self) -> Self {
        self.conj() / self.norm_sqr()
    }

    pub fn normalize(self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self / n)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[inline]
    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }

    /// Componentwise closeness in the Euclidean norm.
    #[inline]
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        self.dist(other) <= tol
    }

    /// `cos(angle) + axis · sin(angle)` for a pure unit `axis`.
    pub fn exp_unit(axis: Self, angle: f64) -> Result<Self> {
        let norm = axis.norm();
        if (norm - 1.0).abs() > DEFAULT_TOL || axis.w.abs() > DEFAULT_TOL {
            return Err(Error::NotUnitAxis { norm, real: axis.w });
        }
        let (s, c) = libm::sincos(angle);
        Ok(Self::real(c) + axis.im() * s)
    }

    /// `e^{i angle}`.
    #[inline]
    pub fn exp_i(angle: f64) -> Self {
        let (s, c) = libm::sincos(angle);
        Self::new(c, s, 0.0, 0.0)
    }

    /// `e^{j angle}`.
    #[inline]
    pub fn exp_j(angle: f64) -> Self {
        let (s, c) = libm::sincos(angle);
        Self::new(c, 0.0, s, 0.0)
    }

    /// Membership in the subalgebra `Span{1, j}`.
    #[inline]
    pub fn in_span_1j(self, tol: f64) -> bool {
        self.x.abs() <= tol && self.z.abs() <= tol
    }

    /// Membership in the subalgebra `Span{1, i}`.
    #[inline]
    pub fn in_span_1i(self, tol: f64) -> bool {
        self.y.abs() <= tol && self.z.abs() <= tol
    }

    /// Membership in `Span{1, j, k}`, the ℝ³ chart used for cylinders.
    #[inline]
    pub fn in_span_1jk(self, tol: f64) -> bool {
        self.x.abs() <= tol
    }

    #[inline]
    pub fn components(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    /// Hamilton product.
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

/// A point of the complex plane: parameter `z = x + iy`, a lattice vector or
/// a frequency.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub const ZERO: Self = Self::new(0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0);

    #[inline]
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    /// `e^{i angle}`.
    #[inline]
    pub fn cis(angle: f64) -> Self {
        let (s, c) = libm::sincos(angle);
        Self::new(c, s)
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    #[inline]
    pub fn norm(self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    /// Argument in `(−π, π]`.
    #[inline]
    pub fn arg(self) -> f64 {
        libm::atan2(self.im, self.re)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Embedding into `Span{1, i} ⊂ ℍ`.
    #[inline]
    pub fn in_i(self) -> Quaternion {
        Quaternion::new(self.re, self.im, 0.0, 0.0)
    }

    /// Embedding into `Span{1, j} ⊂ ℍ`.
    #[inline]
    pub fn in_j(self) -> Quaternion {
        Quaternion::new(self.re, 0.0, self.im, 0.0)
    }

    #[inline]
    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl Add for ComplexPoint {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for ComplexPoint {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for ComplexPoint {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul for ComplexPoint {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Mul<f64> for ComplexPoint {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.re * s, self.im * s)
    }
}

impl Div for ComplexPoint {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let d = o.norm_sqr();
        Self::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
}

impl Div<f64> for ComplexPoint {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.re / s, self.im / s)
    }
}

/// The real pairing `⟨a + ib, x + iy⟩ = ax + by`.
#[inline]
pub fn real_pairing(w: ComplexPoint, z: ComplexPoint) -> f64 {
    w.re * z.re + w.im * z.im
}

/// The unit character `e_γ(z) = e^{2πi⟨γ, z⟩}`, valued in `Span{1, i}`.
#[inline]
pub fn e_gamma(gamma: ComplexPoint, z: ComplexPoint) -> Quaternion {
    Quaternion::exp_i(2.0 * PI * real_pairing(gamma, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;

    fn close(a: Quaternion, b: Quaternion, tol: f64) {
        assert!(a.approx_eq(b, tol), "{a} != {b}");
    }

    #[test]
    fn hamilton_table() {
        close(I * J, K, 0.0);
        close(J * I, -K, 0.0);
        close(J * K, I, 0.0);
        close(K * I, J, 0.0);
        for u in [I, J, K] {
            close(u * u, -Quaternion::ONE, 0.0);
        }
        close(I * J * K, -Quaternion::ONE, 0.0);
    }

    #[test]
    fn k_times_complex() {
        // k (0.8 − 0.6i) = 0.8k − 0.6j
        let q = K * Quaternion::new(0.8, -0.6, 0.0, 0.0);
        close(q, Quaternion::new(0.0, 0.0, -0.6, 0.8), 1e-15);
    }

    #[test]
    fn inverses() {
        close(Quaternion::ONE.inv().unwrap(), Quaternion::ONE, 0.0);
        close(J.inv().unwrap(), -J, 0.0);
        let q = Quaternion::new(0.5, 0.5, 0.5, 0.5);
        close(
            q.inv().unwrap(),
            Quaternion::new(0.5, -0.5, -0.5, -0.5),
            1e-16,
        );
        assert_eq!(Quaternion::ZERO.inv(), Err(Error::ZeroQuaternion));
    }

    #[test]
    fn unit_exponentials() {
        close(Quaternion::exp_unit(J, 0.0).unwrap(), Quaternion::ONE, 0.0);
        close(Quaternion::exp_unit(J, PI / 2.0).unwrap(), J, 1e-16);
        let e = Quaternion::exp_unit(J, PI / 3.0).unwrap();
        close(e, Quaternion::new(0.5, 0.0, 3f64.sqrt() / 2.0, 0.0), 1e-15);
        assert!(matches!(
            Quaternion::exp_unit(Quaternion::pure(1.0, 1.0, 0.0), 1.0),
            Err(Error::NotUnitAxis { .. })
        ));
        assert!(matches!(
            Quaternion::exp_unit(Quaternion::new(1.0, 0.0, 0.0, 0.0), 1.0),
            Err(Error::NotUnitAxis { .. })
        ));
    }

    #[test]
    fn pairing_examples() {
        let (u, v) = (2.0, 1.0);
        let beta0 = ComplexPoint::new(u, -v);
        assert_eq!(real_pairing(beta0, ComplexPoint::new(0.25, 0.0)), 0.5);
        for (u, v) in [(2.0, 1.0), (0.7, 3.1), (1.0, 1.0)] {
            let b = ComplexPoint::new(u, -v);
            let p = real_pairing(b, ComplexPoint::new(0.0, 1.0 / v));
            assert!((p + 1.0).abs() < 1e-15);
        }
        assert_eq!(
            real_pairing(ComplexPoint::new(3.0, 4.0), ComplexPoint::ZERO),
            0.0
        );
    }

    #[test]
    fn e_gamma_examples() {
        let beta0 = ComplexPoint::new(2.0, -1.0);
        close(e_gamma(beta0, ComplexPoint::ZERO), Quaternion::ONE, 0.0);
        close(
            e_gamma(beta0, ComplexPoint::new(0.25, 0.0)),
            -Quaternion::ONE,
            1e-15,
        );
        let a = 1.7;
        close(
            e_gamma(ComplexPoint::new(0.0, a), ComplexPoint::new(0.3, 0.5 / a)),
            -Quaternion::ONE,
            1e-15,
        );
    }

    #[test]
    fn complex_division_roundtrip() {
        let a = ComplexPoint::new(1.0, -2.0);
        let b = ComplexPoint::new(2.0, -1.0);
        let q = a / b;
        assert!((q * b).dist(a) < 1e-15);
        assert!((q.dist(ComplexPoint::new(0.8, -0.6))) < 1e-15);
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)
            .prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
    }

    fn unit_quat() -> impl Strategy<Value = Quaternion> {
        quat()
            .prop_filter("nonzero", |q| q.norm() > 1e-3)
            .prop_map(|q| q.normalize().unwrap())
    }

    fn unit_axis() -> impl Strategy<Value = Quaternion> {
        (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
            .prop_filter("nonzero", |(x, y, z)| x * x + y * y + z * z > 1e-3)
            .prop_map(|(x, y, z)| Quaternion::pure(x, y, z).normalize().unwrap())
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in unit_quat(), b in unit_quat()) {
            let lhs = (a * b).norm();
            let rhs = a.norm() * b.norm();
            prop_assert!((lhs - rhs).abs() <= 4.0 * f64::EPSILON);
        }

        #[test]
        fn inverse_is_two_sided(q in unit_quat()) {
            let e = q * q.inv().unwrap() - Quaternion::ONE;
            prop_assert!(e.norm() <= 8.0 * f64::EPSILON);
            let e = q.inv().unwrap() * q - Quaternion::ONE;
            prop_assert!(e.norm() <= 8.0 * f64::EPSILON);
        }

        #[test]
        fn conj_product_is_norm(q in quat()) {
            let p = q * q.conj();
            prop_assert!(p.im().norm() <= 1e-14);
            prop_assert!((p.w - q.norm_sqr()).abs() <= 1e-14);
        }

        #[test]
        fn conjugation_preserves_real_part(q in unit_quat(), w in quat()) {
            let c = q * w * q.inv().unwrap();
            prop_assert!((c.w - w.w).abs() < 1e-12);
        }

        #[test]
        fn exponential_addition(a in unit_axis(), t1 in -10.0..10.0f64, t2 in -10.0..10.0f64) {
            let lhs = Quaternion::exp_unit(a, t1).unwrap() * Quaternion::exp_unit(a, t2).unwrap();
            let rhs = Quaternion::exp_unit(a, t1 + t2).unwrap();
            prop_assert!(lhs.dist(rhs) < 1e-12);
            prop_assert!((rhs.norm() - 1.0).abs() < 1e-15);
        }

        #[test]
        fn k_swaps_through_exp_i(t in -10.0..10.0f64) {
            let lhs = K * Quaternion::exp_i(t);
            let rhs = Quaternion::exp_i(-t) * K;
            prop_assert!(lhs.dist(rhs) < 1e-12);
        }

        #[test]
        fn e_gamma_is_a_character(
            g1 in (-5.0..5.0f64, -5.0..5.0f64),
            g2 in (-5.0..5.0f64, -5.0..5.0f64),
            z in (-2.0..2.0f64, -2.0..2.0f64),
        ) {
            let g1 = ComplexPoint::new(g1.0, g1.1);
            let g2 = ComplexPoint::new(g2.0, g2.1);
            let z = ComplexPoint::new(z.0, z.1);
            let lhs = e_gamma(g1 + g2, z);
            let rhs = e_gamma(g1, z) * e_gamma(g2, z);
            prop_assert!(lhs.dist(rhs) < 1e-12);
            prop_assert!(lhs.in_span_1i(0.0));
        }

        #[test]
        fn pairing_is_symmetric_bilinear(
            a in (-5.0..5.0f64, -5.0..5.0f64),
            b in (-5.0..5.0f64, -5.0..5.0f64),
            s in -3.0..3.0f64,
        ) {
            let a = ComplexPoint::new(a.0, a.1);
            let b = ComplexPoint::new(b.0, b.1);
            prop_assert_eq!(real_pairing(a, b), real_pairing(b, a));
            let lhs = real_pairing(a * s, b);
            prop_assert!((lhs - s * real_pairing(a, b)).abs() < 1e-12);
        }
    }
}
