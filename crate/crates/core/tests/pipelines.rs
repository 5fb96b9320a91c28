use darboux_core::darboux::{
    polychromatic_transform, prolong_transform, BulgeTorusFamily, CylinderFamily,
};
use darboux_core::diffgeo::{ParamSurface, Target};
use darboux_core::hamstat::{bulge_frequencies, bulge_multiplier, RectangularTorus};
use darboux_core::{ComplexPoint, Quaternion};

fn grid(px: f64, py: f64, n: usize) -> impl Iterator<Item = (f64, f64)> {
    (0..n * n).map(move |k| {
        let (i, j) = (k % n, k / n);
        (
            px * (i as f64 + 0.5) / n as f64,
            py * (j as f64 + 0.5) / n as f64,
        )
    })
}

#[test]
fn three_routes_agree() {
    for (u, v, n) in [(2.0, 1.0, 2), (3.0, 1.0, 3)] {
        let fam = BulgeTorusFamily::new(u, v, n).unwrap();
        let torus = *fam.torus();
        let prolonged = prolong_transform(torus, fam.section().unwrap()).unwrap();
        let data = fam.polychromatic_data(ComplexPoint::ONE).unwrap();
        let poly = polychromatic_transform(&torus, &data).unwrap();
        let mut worst = 0.0f64;
        for (x, y) in grid(1.0 / u, 1.0 / v, 32) {
            let closed = fam.eval(x, y);
            worst = worst
                .max(closed.dist(prolonged.try_eval(x, y).unwrap()))
                .max(closed.dist(poly.eval(x, y)));
        }
        assert!(worst < 1e-8, "({u},{v},{n}): {worst:e}");
    }
}

#[test]
fn weights_scale_out() {
    let fam = BulgeTorusFamily::new(2.0, 1.0, 2).unwrap();
    let base = polychromatic_transform(
        fam.torus(),
        &fam.polychromatic_data(ComplexPoint::ONE).unwrap(),
    )
    .unwrap();
    for c in [
        ComplexPoint::new(2.0, 0.0),
        ComplexPoint::I,
        ComplexPoint::new(1.0, 1.0),
    ] {
        let scaled =
            polychromatic_transform(fam.torus(), &fam.polychromatic_data(c).unwrap()).unwrap();
        for (x, y) in grid(0.5, 1.0, 16) {
            assert!(base.eval(x, y).dist(scaled.eval(x, y)) < 1e-10);
        }
    }
}

#[test]
fn bulge_tori_lie_on_the_sphere() {
    for (u, v, n) in [
        (2.0, 1.0, 2),
        (2.9, 1.0, 3),
        (4.3, 1.0, 4),
        (3f64.sqrt(), 1.0, 2),
    ] {
        let fam = BulgeTorusFamily::new(u, v, n).unwrap();
        for (x, y) in grid(1.0 / u, 1.0 / v, 64) {
            assert!((fam.eval(x, y).norm() - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn tau_hat_has_constant_length() {
    // |τ̂|² = 1/(4π²ρ²)
    let fam = BulgeTorusFamily::new(2.6, 1.0, 2).unwrap();
    let expected = 1.0 / (4.0 * std::f64::consts::PI.powi(2) * fam.rho().powi(2));
    for k in 0..200 {
        let y = k as f64 / 200.0;
        assert!((fam.tau_hat(y).norm_sqr() - expected).abs() < 1e-12 * expected);
    }
}

#[test]
fn bulge_tori_are_doubly_periodic_and_of_revolution() {
    let fam = BulgeTorusFamily::new(2.9, 1.0, 3).unwrap();
    let (u, v) = (fam.u(), fam.v());
    for (x, y) in grid(1.0 / u, 1.0 / v, 12) {
        let f = fam.eval(x, y);
        assert!(fam.eval(x + 1.0 / u, y).dist(f) < 1e-12);
        assert!(fam.eval(x, y + 1.0 / v).dist(f) < 1e-12);
        let (k0, k1) = fam.revolution_profiles(y);
        let rebuilt = Quaternion::exp_j(2.0 * std::f64::consts::PI * u * x) * k0
            + Quaternion::I * Quaternion::exp_j(2.0 * std::f64::consts::PI * v * y) * k1;
        assert!(rebuilt.dist(f) < 1e-12);
    }
}

#[test]
fn single_frequency_transform_is_spherical_but_not_unit() {
    let torus = RectangularTorus::new(2.0, 1.0).unwrap();
    let m = bulge_multiplier(&torus, 2).unwrap();
    let [p, _] = bulge_frequencies(&torus, 2).unwrap();
    let section = darboux_core::hamstat::monochromatic_section(&torus, &m, &p).unwrap();
    let f = prolong_transform(torus, section).unwrap();
    let radii: Vec<f64> = grid(0.5, 1.0, 8)
        .map(|(x, y)| f.try_eval(x, y).unwrap().norm())
        .collect();
    let r0 = radii[0];
    assert!(radii.iter().all(|r| (r - r0).abs() < 1e-9));
    assert!((r0 - 5.0 / 3.0).abs() < 1e-9);
}

#[test]
fn cylinder_family_matches_prolongation() {
    for (u, a) in [(2.0, 1.0), (1.5, 1.5), (1.01, 1.0), (2.9, 0.4)] {
        let fam = CylinderFamily::new(u, a).unwrap();
        let prolonged = prolong_transform(*fam.cylinder(), fam.section().unwrap()).unwrap();
        for (x, y) in grid(1.0 / u, 1.0 / a, 12) {
            let d = fam.eval(x, y).dist(prolonged.try_eval(x, y).unwrap());
            assert!(d < 1e-8, "({u},{a}) at ({x},{y}): {d:e}");
        }
        assert_eq!(fam.target(), Target::R3);
    }
}
