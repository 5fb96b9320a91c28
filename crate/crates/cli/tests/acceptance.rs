// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria, one PASS/FAIL line each.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::Instant;

use darboux::io::parse_obj;
use darboux::suites::{brute_force_spectrum, grid, kappa0_turns, lattice_indices, sweep};
use darboux_core::darboux::{
    polychromatic_transform, prolong_transform, BulgeTorusFamily, CylinderFamily,
};
use darboux_core::diffgeo::{
    holomorphic_residual, mean_curvature_num, multiplier_residual, ParamSurface, CURVATURE_STEP,
};
use darboux_core::hamstat::{
    bulge_cs, bulge_frequencies, bulge_multiplier, cylinder_sections, monochromatic_section,
    spectral_frequencies, MultiplierData, RectangularTorus, StandardCylinder, SPECTRAL_TOL,
};
use darboux_core::{ComplexPoint, Quaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fam(u: f64, v: f64, n: u32) -> Result<BulgeTorusFamily, String> {
    BulgeTorusFamily::new(u, v, n).map_err(|e| e.to_string())
}

fn s3_membership() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (u, v, n) in [(2.0, 1.0, 2), (2.9, 1.0, 3), (4.3, 1.0, 4)] {
        let start = Instant::now();
        let f = fam(u, v, n)?;
        let worst = grid(1.0 / u, 1.0 / v, 128)
            .map(|(x, y)| (f.eval(x, y).norm() - 1.0).abs())
            .fold(0.0f64, f64::max);
        let secs = start.elapsed().as_secs_f64();
        ok &= worst < 1e-10 && secs < 1.0;
        details.push(format!("({u},{v},{n}) max {worst:.1e} in {secs:.3}s"));
    }
    ensure(ok, details.join("; "))
}

fn mean_curvature_values() -> Outcome {
    let f = fam(2.0, 1.0, 2)?;
    let h0 = f.mean_curvature_closed(0.0).map_err(|e| e.to_string())?;
    let h1 = f.mean_curvature_closed(0.25).map_err(|e| e.to_string())?;
    let n0 = mean_curvature_num(&f, 0.1, 0.0, CURVATURE_STEP)
        .map_err(|e| e.to_string())?
        .value;
    let n1 = mean_curvature_num(&f, 0.1, 0.25, CURVATURE_STEP)
        .map_err(|e| e.to_string())?
        .value;
    let e0 = (h0 - 7.0 / 36.0).abs();
    let e1 = (h1 + 1.0 / 12.0).abs();
    let d0 = (n0 - h0).abs();
    let d1 = (n1 - h1).abs();
    ensure(
        e0 < 1e-12 && e1 < 1e-12 && d0 < 1e-4 && d1 < 1e-4,
        format!("H(0)={h0} (err {e0:.1e}), H(1/4)={h1} (err {e1:.1e}); numeric diffs {d0:.1e}, {d1:.1e}"),
    )
}

fn cmc_iff() -> Outcome {
    let rows = sweep(1.0, 2, 4.0, 50).map_err(|e| e.to_string())?;
    let interior = rows[1..]
        .iter()
        .map(|r| (r.h0 - r.h_half).abs())
        .fold(f64::INFINITY, f64::min);
    let left = fam(rows[0].u, 1.0, 2)?;
    let hs: Vec<f64> = (0..1000)
        .map(|k| left.mean_curvature_closed(k as f64 / 1000.0))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let spread =
        hs.iter().copied().fold(f64::MIN, f64::max) - hs.iter().copied().fold(f64::MAX, f64::min);
    let torus_h = RectangularTorus::new(3f64.sqrt(), 1.0)
        .map_err(|e| e.to_string())?
        .mean_curvature();
    let e_torus = (hs[0] - torus_h).abs();
    let e_value = (hs[0] - 1.0 / 3f64.sqrt()).abs();
    ensure(
        rows.len() == 50 && interior > 1e-6 && spread < 1e-9 && e_torus < 1e-10 && e_value < 1e-10,
        format!("min interior |H0-Hhalf| {interior:.2e}; endpoint spread {spread:.1e}, |H-1/sqrt3| {e_value:.1e}"),
    )
}

fn bulge_count() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (u, n) in [(2.0, 2u32), (2.9, 3)] {
        match kappa0_turns(&fam(u, 1.0, n)?) {
            Some((count, worst)) => {
                ok &= count == 2 * n as usize && worst < 1e-8;
                details.push(format!("({u},1,{n}) {count} turns, max offset {worst:.1e}"));
            }
            None => {
                ok = false;
                details.push(format!("({u},1,{n}) wrong number of turns"));
            }
        }
    }
    ensure(ok, details.join("; "))
}

fn pipeline_triangle() -> Outcome {
    let mut worst = 0.0f64;
    let mut scaling = 0.0f64;
    for (u, v, n) in [(2.0, 1.0, 2), (3.0, 1.0, 3)] {
        let f = fam(u, v, n)?;
        let torus = *f.torus();
        let section = f.section().map_err(|e| e.to_string())?;
        let pr = prolong_transform(torus, section).map_err(|e| e.to_string())?;
        let data = |m| f.polychromatic_data(m).map_err(|e| e.to_string());
        let poly = polychromatic_transform(&torus, &data(ComplexPoint::ONE)?)
            .map_err(|e| e.to_string())?;
        for (x, y) in grid(1.0 / u, 1.0 / v, 32) {
            let closed = f.eval(x, y);
            let p = pr.try_eval(x, y).map_err(|e| e.to_string())?;
            worst = worst
                .max(closed.dist(p))
                .max(closed.dist(poly.eval(x, y)))
                .max(p.dist(poly.eval(x, y)));
        }
        for c in [
            ComplexPoint::new(2.0, 0.0),
            ComplexPoint::I,
            ComplexPoint::new(1.0, 1.0),
        ] {
            let t = polychromatic_transform(&torus, &data(c)?).map_err(|e| e.to_string())?;
            for (x, y) in grid(1.0 / u, 1.0 / v, 32) {
                scaling = scaling.max(t.eval(x, y).dist(poly.eval(x, y)));
            }
        }
    }
    ensure(
        worst < 1e-8 && scaling < 1e-10,
        format!("max pairwise {worst:.1e}; weight scaling {scaling:.1e}"),
    )
}

fn holomorphic_sections() -> Outcome {
    let samples: Vec<ComplexPoint> = (0..32)
        .map(|k| ComplexPoint::new(0.0173 * k as f64, 0.0391 * k as f64))
        .collect();
    let err = |e: darboux_core::Error| e.to_string();
    let (mut hol, mut mul) = (0.0f64, 0.0f64);
    let torus = RectangularTorus::new(2.0, 1.0).map_err(err)?;
    let m = bulge_multiplier(&torus, 2).map_err(err)?;
    for p in bulge_frequencies(&torus, 2).map_err(err)? {
        let s = monochromatic_section(&torus, &m, &p).map_err(err)?;
        for z in &samples {
            hol = hol.max(
                holomorphic_residual(&s, |x, y| torus.frame(x, y).n, z.re, z.im, 1e-4)
                    .map_err(err)?,
            );
        }
        for gamma in torus.lattice() {
            mul = mul.max(multiplier_residual(
                &s,
                gamma,
                m.multiplier(gamma),
                &samples,
            ));
        }
    }
    let cyl = StandardCylinder::new(2.0).map_err(err)?;
    let cs = cylinder_sections(&cyl, 1.0).map_err(err)?;
    let cm = MultiplierData::with_b(cs.b);
    let gamma = ComplexPoint::new(0.5, 0.0);
    for s in [cs.plus, cs.minus] {
        for z in &samples {
            hol = hol.max(
                holomorphic_residual(&s, |x, y| cyl.frame(x, y).n, z.re, z.im, 1e-4)
                    .map_err(err)?,
            );
        }
        mul = mul.max(multiplier_residual(
            &s,
            gamma,
            cm.multiplier(gamma),
            &samples,
        ));
    }
    ensure(
        hol < 1e-6 && mul < 1e-9,
        format!("holomorphic {hol:.1e}, multiplier {mul:.1e}"),
    )
}

fn identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let f = fam(2.0, 1.0, 2)?;
    let (u, v) = (f.u(), f.v());
    let mut tau_err = 0.0f64;
    for _ in 0..1000 {
        let t = f.tau(rng.random_range(0.0..1.0));
        tau_err = tau_err.max((PI * u * v * t.norm_sqr() - (v * t.t0.y + u * t.t1.y)).abs());
    }
    let mut cs_err = 0.0f64;
    for _ in 0..20 {
        let n = rng.random_range(2..6u32);
        let v = rng.random_range(0.2..3.0);
        let u = v * (f64::from(n * n) - 1.0).sqrt() * rng.random_range(1.0..3.0);
        let [cp, sp, cm, sm] = bulge_cs(u, v, n).map_err(|e| e.to_string())?;
        cs_err = cs_err
            .max((cp * cp + sp * sp - 1.0).abs())
            .max((cm * cm + sm * sm - 1.0).abs());
    }
    let mut re_err = 0.0f64;
    for _ in 0..1000 {
        let mut q = || {
            Quaternion::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            )
        };
        let (a, w) = (q(), q());
        let a = a.normalize().map_err(|e| e.to_string())?;
        let inv = a.inv().map_err(|e| e.to_string())?;
        re_err = re_err.max(((a * w * inv).re() - w.re()).abs());
    }
    ensure(
        tau_err < 1e-12 && cs_err < 1e-12 && re_err < 1e-12,
        format!("tau {tau_err:.1e}, c^2+s^2 {cs_err:.1e}, Re(qwq^-1) {re_err:.1e}"),
    )
}

fn cylinders() -> Outcome {
    let err = |e: darboux_core::Error| e.to_string();
    let round = CylinderFamily::new(2.0, 2.0).map_err(err)?;
    let round_spread = round.cmc_test().map_err(err)?.spread();
    let bent = CylinderFamily::new(2.0, 1.0).map_err(err)?;
    let bent_spread = bent.cmc_test().map_err(err)?.spread();
    let mut shape = 0.0f64;
    for (x, y) in grid(0.5, 0.5, 16) {
        let expected = -(Quaternion::exp_j(4.0 * PI * x) / 2.0) + Quaternion::K * (2.0 * PI * y);
        shape = shape.max(round.eval(x, y).dist(expected));
    }
    let mut translation = 0.0f64;
    for (x, y) in grid(0.5, 1.0, 16) {
        let d = bent.eval(x, y + 1.0) - bent.eval(x, y) - Quaternion::K * (2.0 * PI);
        translation = translation.max(d.norm());
    }
    ensure(
        round_spread < 1e-6 && shape < 1e-12 && bent_spread > 1e-3 && translation < 1e-10,
        format!(
            "u=a spread {round_spread:.1e} (round to {shape:.1e}); (2,1) spread {bent_spread:.3e}; translation {translation:.1e}"
        ),
    )
}

fn spectral_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut mismatches = 0;
    let mut nonempty = 0;
    for k in 0..20 {
        let (u, v) = (rng.random_range(0.3..3.0), rng.random_range(0.3..3.0));
        let torus = RectangularTorus::new(u, v).map_err(|e| e.to_string())?;
        let b = if k % 2 == 0 {
            ComplexPoint::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0))
        } else {
            let p = f64::from(rng.random_range(-4..=4i32));
            let q = f64::from(rng.random_range(-4..=4i32));
            ComplexPoint::new(u / 2.0 + p * u, -v / 2.0 + q * v)
                + torus.beta0() * ComplexPoint::cis(rng.random_range(0.0..2.0 * PI)) * 0.5
        };
        let oracle = brute_force_spectrum(u, v, b);
        let found = spectral_frequencies(&torus, &MultiplierData::with_b(b), SPECTRAL_TOL)
            .map(|pts| lattice_indices(u, v, pts.iter().map(|p| p.delta)))
            .unwrap_or_default();
        nonempty += usize::from(!oracle.is_empty());
        mismatches += usize::from(found != oracle);
    }
    let mut pair_ok = true;
    for (u, n) in [(2.0, 2u32), (2.6, 2), (2.9, 3), (4.3, 4)] {
        let torus = RectangularTorus::new(u, 1.0).map_err(|e| e.to_string())?;
        let m = bulge_multiplier(&torus, n).map_err(|e| e.to_string())?;
        let found = spectral_frequencies(&torus, &m, SPECTRAL_TOL).map_err(|e| e.to_string())?;
        let expected = [
            torus.beta0() * 0.5,
            torus.beta0() * 0.5 + ComplexPoint::new(0.0, f64::from(n)),
        ];
        pair_ok &= found.len() == 2
            && expected
                .iter()
                .all(|d| found.iter().any(|p| p.delta.dist(*d) < 1e-12));
    }
    ensure(
        mismatches == 0 && pair_ok,
        format!("{mismatches} mismatches over 20 draws ({nonempty} non-empty); bulge spectra exact: {pair_ok}"),
    )
}

fn gallery() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    for u in [1.8, 2.1, 2.6, 2.9, 3.2, 3.5, 4.3, 5.3, 6.3] {
        let path = dir.path().join(format!("gallery_{u}.obj"));
        let status = Command::new(env!("CARGO_BIN_EXE_darboux"))
            .args([
                "mesh",
                "--u",
                &u.to_string(),
                "--v",
                "1",
                "--grid",
                "128x128",
                "-o",
            ])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            ok = false;
            details.push(format!("u={u}: exit {:?}", status.status.code()));
            continue;
        }
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        match parse_obj(&text) {
            Ok(obj) => {
                let good = obj.vertices.len() == 128 * 128
                    && obj.faces.len() == 2 * 128 * 128
                    && obj.vertices.iter().flatten().all(|c| c.is_finite());
                ok &= good;
                if !good {
                    details.push(format!(
                        "u={u}: {} v / {} f",
                        obj.vertices.len(),
                        obj.faces.len()
                    ));
                }
            }
            Err(e) => {
                ok = false;
                details.push(format!("u={u}: {e}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 10.0;
    details.push(format!("9 meshes of 16384 vertices in {secs:.2}s"));
    ensure(ok, details.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 S3 membership", s3_membership),
        ("2 mean-curvature closed form", mean_curvature_values),
        ("3 CMC iff u = v*sqrt(n^2-1)", cmc_iff),
        ("4 bulge count", bulge_count),
        ("5 pipeline triangle", pipeline_triangle),
        ("6 holomorphicity + multiplier", holomorphic_sections),
        ("7 identity suite", identities),
        ("8 cylinder family", cylinders),
        ("9 spectral enumeration oracle", spectral_oracle),
        ("10 mesh gallery", gallery),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
