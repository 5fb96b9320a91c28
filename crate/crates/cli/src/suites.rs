// SPDX-License-Identifier: Apache-2.0

//! Invariant suites behind `--verify`, `verify` and `sweep`.

use std::f64::consts::PI;

use darboux_core::darboux::{
    polychromatic_transform, prolong_transform, BulgeTorusFamily, CylinderFamily,
};
use darboux_core::diffgeo::{
    conformality_residual, holomorphic_residual, jet, jet_numeric, mean_curvature_num,
    multiplier_residual, normal_bundle_residual, normals_num, ParamSurface, CURVATURE_STEP,
    DEFAULT_STEP,
};
use darboux_core::hamstat::{
    bulge_cs, bulge_frequencies, bulge_multiplier, cylinder_sections, monochromatic_section,
    spectral_frequencies, MultiplierData, RectangularTorus, SPECTRAL_TOL,
};
use darboux_core::{ComplexPoint, Quaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Check, CheckFn};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cell-centred `n × n` grid on `[0, px) × [0, py)`.
pub fn grid(px: f64, py: f64, n: usize) -> impl Iterator<Item = (f64, f64)> {
    (0..n * n).map(move |k| {
        let (i, j) = (k % n, k / n);
        (
            px * (i as f64 + 0.5) / n as f64,
            py * (j as f64 + 0.5) / n as f64,
        )
    })
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, |m, r| {
        if r.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.max(r)
        }
    })
}

/// Runs `f`, turning an error into a failed check.
fn guarded<F>(name: &str, tol: f64, f: F) -> Check
where
    F: FnOnce() -> darboux_core::Result<f64>,
{
    match f() {
        Ok(r) => Check::new(name, r, tol),
        Err(e) => Check::failed(name, tol, e),
    }
}

/// `|τ̂|² · 4π²ρ² − 1`, the closed-form identity behind S³ membership.
fn tau_hat_length(fam: &BulgeTorusFamily, samples: usize) -> f64 {
    let scale = 4.0 * PI * PI * fam.rho() * fam.rho();
    max_of((0..samples).map(|k| {
        let y = k as f64 / (samples as f64 * fam.v());
        (fam.tau_hat(y).norm_sqr() * scale - 1.0).abs()
    }))
}

/// Sign changes of `κ₀′` over one period and their largest distance from
/// the predicted extrema; `None` when the count is wrong.
pub fn kappa0_turns(fam: &BulgeTorusFamily) -> Option<(usize, f64)> {
    let period = 1.0 / fam.v();
    let samples = 4000;
    let d = |y: f64| fam.kappa0(y + 1e-6) - fam.kappa0(y - 1e-6);
    let mut turns = Vec::new();
    for i in 0..samples {
        let a = period * i as f64 / samples as f64;
        let b = period * (i + 1) as f64 / samples as f64;
        let (da, db) = (d(a), d(b));
        if da.signum() != db.signum() {
            let (mut lo, mut hi) = (a, b);
            for _ in 0..64 {
                let mid = 0.5 * (lo + hi);
                if d(mid).signum() == da.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            turns.push(0.5 * (lo + hi));
        }
    }
    let predicted: Vec<f64> = fam
        .extrema()
        .ok()?
        .into_iter()
        .map(|y| y.rem_euclid(period))
        .collect();
    if turns.len() != predicted.len() {
        return None;
    }
    let worst = max_of(turns.iter().map(|t| {
        predicted
            .iter()
            .map(|p| {
                let d = (p - t).abs();
                d.min(period - d)
            })
            .fold(f64::INFINITY, f64::min)
    }));
    Some((turns.len(), worst))
}

/// `Ĥ(0)` from `[r²(v²n⁴ − q̃) − 2q̃(n² − 1)v²] / (2(n² − 1)uv q̃)`.
pub fn h0_display(fam: &BulgeTorusFamily) -> f64 {
    let (u, v, r, n2) = (fam.u(), fam.v(), fam.r(), f64::from(fam.n() * fam.n()));
    let qt = fam.q_tilde();
    (r * r * (v * v * n2 * n2 - qt) - 2.0 * qt * (n2 - 1.0) * v * v)
        / (2.0 * (n2 - 1.0) * u * v * qt)
}

/// `Ĥ(1/(2nv))` from `[2u²v²(n² − 1) − r²R̃₁] / (2(n² − 1)uv³)`.
pub fn h_half_display(fam: &BulgeTorusFamily) -> f64 {
    let (u, v, r, n2) = (fam.u(), fam.v(), fam.r(), f64::from(fam.n() * fam.n()));
    (2.0 * u * u * v * v * (n2 - 1.0) - r * r * fam.r_tilde1()) / (2.0 * (n2 - 1.0) * u * v.powi(3))
}

/// Every invariant of one n-bulge family, as independent groups.
pub fn bulge_groups(
    fam: BulgeTorusFamily,
    seed: u64,
    prefix: &str,
) -> Vec<(String, CheckFn<'static>)> {
    let (u, v, n) = (fam.u(), fam.v(), fam.n());
    let p = |s: &str| format!("{prefix}{s}");
    let mut groups: Vec<(String, CheckFn<'static>)> = Vec::new();

    let name = p("sphere");
    groups.push((
        name.clone(),
        Box::new(move || {
            let membership = max_of(
                grid(1.0 / u, 1.0 / v, 128).map(|(x, y)| (fam.eval(x, y).norm() - 1.0).abs()),
            );
            vec![
                Check::new(format!("{name}.membership"), membership, 1e-10),
                Check::new(
                    format!("{name}.tau_hat_length"),
                    tau_hat_length(&fam, 1000),
                    1e-12,
                ),
            ]
        }),
    ));

    let name = p("identity");
    groups.push((
        name.clone(),
        Box::new(move || {
            let mut r = rng(seed);
            let tau = max_of((0..1000).map(|_| {
                let t = fam.tau(r.random_range(0.0..1.0 / v));
                let lhs = PI * u * v * t.norm_sqr();
                (lhs - (v * t.t0.y + u * t.t1.y)).abs() / lhs.max(1.0)
            }));
            let cs = match bulge_cs(u, v, n) {
                Ok([cp, sp, cm, sm]) => Check::new(
                    format!("{name}.cos_sin_unit"),
                    (cp * cp + sp * sp - 1.0)
                        .abs()
                        .max((cm * cm + sm * sm - 1.0).abs()),
                    1e-12,
                ),
                Err(e) => Check::failed(format!("{name}.cos_sin_unit"), 1e-12, e),
            };
            vec![Check::new(format!("{name}.tau"), tau, 1e-12), cs]
        }),
    ));

    let name = p("geometry");
    groups.push((
        name.clone(),
        Box::new(move || {
            let mut r = rng(seed.wrapping_add(1));
            let conformal = guarded(&format!("{name}.conformality"), 1e-6, || {
                let mut worst = 0.0f64;
                for _ in 0..100 {
                    let (x, y) = (r.random_range(0.0..1.0 / u), r.random_range(0.0..1.0 / v));
                    worst = worst.max(conformality_residual(&jet_numeric(
                        &fam,
                        x,
                        y,
                        DEFAULT_STEP,
                    )?)?);
                }
                Ok(worst)
            });
            let periodic = max_of(grid(1.0 / u, 1.0 / v, 16).map(|(x, y)| {
                let f = fam.eval(x, y);
                fam.eval(x + 1.0 / u, y)
                    .dist(f)
                    .max(fam.eval(x, y + 1.0 / v).dist(f))
            }));
            let revolution = max_of(grid(1.0 / u, 1.0 / v, 16).map(|(x, y)| {
                let (k0, k1) = fam.revolution_profiles(y);
                let f = Quaternion::exp_j(2.0 * PI * u * x) * k0
                    + Quaternion::I * Quaternion::exp_j(2.0 * PI * v * y) * k1;
                f.dist(fam.eval(x, y))
            }));
            vec![
                conformal,
                Check::new(format!("{name}.periodicity"), periodic, 1e-10),
                Check::new(format!("{name}.revolution"), revolution, 1e-10),
            ]
        }),
    ));

    let name = p("pipeline");
    groups.push((
        name.clone(),
        Box::new(move || {
            let torus = *fam.torus();
            let prolonged = guarded(&format!("{name}.prolongation"), 1e-8, || {
                let pr = prolong_transform(torus, fam.section()?)?;
                let mut worst = 0.0f64;
                for (x, y) in grid(1.0 / u, 1.0 / v, 32) {
                    worst = worst.max(pr.try_eval(x, y)?.dist(fam.eval(x, y)));
                }
                Ok(worst)
            });
            let poly = guarded(&format!("{name}.polychromatic"), 1e-8, || {
                let t =
                    polychromatic_transform(&torus, &fam.polychromatic_data(ComplexPoint::ONE)?)?;
                Ok(max_of(
                    grid(1.0 / u, 1.0 / v, 32).map(|(x, y)| t.eval(x, y).dist(fam.eval(x, y))),
                ))
            });
            let weights = guarded(&format!("{name}.weight_invariance"), 1e-10, || {
                let base =
                    polychromatic_transform(&torus, &fam.polychromatic_data(ComplexPoint::ONE)?)?;
                let mut worst = 0.0f64;
                for c in [
                    ComplexPoint::new(2.0, 0.0),
                    ComplexPoint::I,
                    ComplexPoint::new(1.0, 1.0),
                ] {
                    let t = polychromatic_transform(&torus, &fam.polychromatic_data(c)?)?;
                    for (x, y) in grid(1.0 / u, 1.0 / v, 16) {
                        worst = worst.max(t.eval(x, y).dist(base.eval(x, y)));
                    }
                }
                Ok(worst)
            });
            vec![prolonged, poly, weights]
        }),
    ));

    let name = p("curvature");
    groups.push((
        name.clone(),
        Box::new(move || {
            let mut r = rng(seed.wrapping_add(2));
            let frame = guarded(&format!("{name}.frame_vs_closed"), 1e-9, || {
                let mut worst = 0.0f64;
                for _ in 0..100 {
                    let (x, y) = (r.random_range(0.0..1.0 / u), r.random_range(0.0..1.0 / v));
                    worst = worst
                        .max((fam.hat_h_via_frame(x, y)? - fam.mean_curvature_closed(y)?).abs());
                }
                Ok(worst)
            });
            let numeric = guarded(&format!("{name}.numeric_vs_closed"), 1e-4, || {
                let mut worst = 0.0f64;
                for _ in 0..20 {
                    let (x, y) = (r.random_range(0.0..1.0 / u), r.random_range(0.0..1.0 / v));
                    let h = mean_curvature_num(&fam, x, y, CURVATURE_STEP)?.value;
                    worst = worst.max((h - fam.mean_curvature_closed(y)?).abs());
                }
                Ok(worst)
            });
            let displays = guarded(&format!("{name}.special_displays"), 1e-12, || {
                let s = fam.mean_curvature_special()?;
                if fam.is_cmc() {
                    let h = fam.torus().mean_curvature();
                    return Ok((s.h0 - h).abs().max((s.h_half - h).abs()));
                }
                Ok((s.h0 - h0_display(&fam))
                    .abs()
                    .max((s.h_half - h_half_display(&fam)).abs()))
            });
            vec![frame, numeric, displays]
        }),
    ));

    let name = p("cmc");
    groups.push((
        name.clone(),
        Box::new(move || {
            if fam.is_cmc() {
                let target = fam.torus().mean_curvature();
                let values: Vec<darboux_core::Result<f64>> = (0..256)
                    .map(|k| fam.mean_curvature_closed(k as f64 / (256.0 * v)))
                    .collect();
                let spread = guarded(&format!("{name}.spread"), 1e-9, || {
                    let hs = values
                        .iter()
                        .cloned()
                        .collect::<darboux_core::Result<Vec<f64>>>()?;
                    let max = hs.iter().copied().fold(f64::MIN, f64::max);
                    let min = hs.iter().copied().fold(f64::MAX, f64::min);
                    Ok(max - min)
                });
                let torus = guarded(&format!("{name}.torus_value"), 1e-10, || {
                    Ok((values[0].clone()? - target).abs())
                });
                let kappa = max_of(
                    (0..256).map(|k| (fam.kappa0(k as f64 / (256.0 * v)) - fam.kappa0(0.0)).abs()),
                );
                vec![
                    spread,
                    torus,
                    Check::new(format!("{name}.kappa0_constant"), kappa, 1e-12),
                ]
            } else {
                let classified = match fam.mean_curvature_special() {
                    Ok(s) => Check::predicate(
                        format!("{name}.non_constant"),
                        (s.h0 - s.h_half).abs() > 1e-6,
                    ),
                    Err(e) => Check::failed(format!("{name}.non_constant"), 0.0, e),
                };
                let bulges = match kappa0_turns(&fam) {
                    Some((_, worst)) => Check::new(format!("{name}.bulge_extrema"), worst, 1e-8),
                    None => Check::failed(
                        format!("{name}.bulge_extrema"),
                        1e-8,
                        "wrong number of extrema",
                    ),
                };
                vec![classified, bulges]
            }
        }),
    ));

    let name = p("sections");
    groups.push((
        name.clone(),
        Box::new(move || {
            let torus = *fam.torus();
            let samples: Vec<ComplexPoint> = (0..16)
                .map(|k| ComplexPoint::new(0.031 * k as f64, 0.067 * k as f64))
                .collect();
            let run = || -> darboux_core::Result<(f64, f64, f64)> {
                let (mut hol, mut mul) = (0.0f64, 0.0f64);
                let m = bulge_multiplier(&torus, n)?;
                let points = bulge_frequencies(&torus, n)?;
                for p in &points {
                    let s = monochromatic_section(&torus, &m, p)?;
                    for z in &samples {
                        hol = hol.max(holomorphic_residual(
                            &s,
                            |x, y| torus.frame(x, y).n,
                            z.re,
                            z.im,
                            1e-4,
                        )?);
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
                let found = spectral_frequencies(&torus, &m, SPECTRAL_TOL)?;
                let spectrum = max_of(points.iter().map(|p| {
                    found
                        .iter()
                        .map(|f| f.delta.dist(p.delta))
                        .fold(f64::INFINITY, f64::min)
                }));
                Ok((hol, mul, spectrum))
            };
            match run() {
                Ok((h, m, s)) => vec![
                    Check::new(format!("{name}.holomorphic"), h, 1e-6),
                    Check::new(format!("{name}.multiplier"), m, 1e-9),
                    Check::new(format!("{name}.spectrum"), s, 1e-12),
                ],
                Err(e) => vec![Check::failed(format!("{name}.holomorphic"), 1e-6, e)],
            }
        }),
    ));

    groups.extend(torus_groups(*fam.torus(), seed, &p("torus.")));
    groups
}

/// Invariants of the source rectangular torus.
pub fn torus_groups(
    torus: RectangularTorus,
    seed: u64,
    prefix: &str,
) -> Vec<(String, CheckFn<'static>)> {
    let name = prefix.trim_end_matches('.').to_string();
    let (u, v) = (torus.u(), torus.v());
    vec![(
        name.clone(),
        Box::new(move || {
            let mut r = rng(seed.wrapping_add(3));
            let mut pts = Vec::with_capacity(200);
            for _ in 0..200 {
                pts.push((r.random_range(0.0..1.0 / u), r.random_range(0.0..1.0 / v)));
            }
            let normals = guarded(&format!("{name}.normals"), 1e-8, || {
                let mut worst = 0.0f64;
                for &(x, y) in &pts {
                    let (n, rr) = normals_num(&jet(&torus, x, y, DEFAULT_STEP)?)?;
                    let fr = torus.frame(x, y);
                    worst = worst.max(n.dist(fr.n)).max(rr.dist(fr.r));
                }
                Ok(worst)
            });
            let normals_fd = guarded(&format!("{name}.normals_fd"), 1e-6, || {
                let mut worst = 0.0f64;
                for &(x, y) in &pts {
                    let (n, rr) = normals_num(&jet_numeric(&torus, x, y, DEFAULT_STEP)?)?;
                    let fr = torus.frame(x, y);
                    worst = worst.max(n.dist(fr.n)).max(rr.dist(fr.r));
                }
                Ok(worst)
            });
            let bundle = max_of(pts.iter().map(|&(x, y)| {
                let fr = torus.frame(x, y);
                normal_bundle_residual(fr.n, fr.r, fr.n * torus.eval(x, y))
            }));
            let curvature = guarded(&format!("{name}.mean_curvature"), 1e-5, || {
                let mut worst = 0.0f64;
                for &(x, y) in pts.iter().take(10) {
                    let h = mean_curvature_num(&torus, x, y, CURVATURE_STEP)?.value;
                    worst = worst.max((h - torus.mean_curvature()).abs());
                }
                Ok(worst)
            });
            vec![
                normals,
                normals_fd,
                Check::new(format!("{name}.normal_bundle"), bundle, 1e-10),
                curvature,
            ]
        }),
    )]
}

/// Checks of one cylinder family; the CMC verdict must match `u = a`.
pub fn cylinder_groups(fam: CylinderFamily, prefix: &str) -> Vec<(String, CheckFn<'static>)> {
    let name = prefix.trim_end_matches('.').to_string();
    let (u, a) = (fam.u(), fam.a());
    vec![(
        name.clone(),
        Box::new(move || {
            let pts: Vec<(f64, f64)> = grid(1.0 / u, 1.0 / a, 16).collect();
            let in_r3 = max_of(pts.iter().map(|&(x, y)| fam.eval(x, y).x.abs()));
            let periodic = max_of(pts.iter().map(|&(x, y)| {
                let f = fam.eval(x, y);
                let shifted = fam.eval(x, y + 1.0 / a) - Quaternion::K * (2.0 * PI / a);
                fam.eval(x + 1.0 / u, y).dist(f).max(shifted.dist(f))
            }));
            let prolonged = guarded(&format!("{name}.prolongation"), 1e-8, || {
                let pr = prolong_transform(*fam.cylinder(), fam.section()?)?;
                let mut worst = 0.0f64;
                for &(x, y) in &pts {
                    worst = worst.max(pr.try_eval(x, y)?.dist(fam.eval(x, y)));
                }
                Ok(worst)
            });
            let samples: Vec<ComplexPoint> =
                pts.iter().map(|&(x, y)| ComplexPoint::new(x, y)).collect();
            let sections = (|| -> darboux_core::Result<(f64, f64)> {
                let cs = cylinder_sections(fam.cylinder(), a)?;
                let m = MultiplierData::with_b(cs.b);
                let gamma = ComplexPoint::new(1.0 / u, 0.0);
                let (mut hol, mut mul) = (0.0f64, 0.0f64);
                for s in [cs.plus, cs.minus] {
                    for z in samples.iter().take(16) {
                        hol = hol.max(holomorphic_residual(
                            &s,
                            |x, y| fam.cylinder().frame(x, y).n,
                            z.re,
                            z.im,
                            1e-4,
                        )?);
                    }
                    mul = mul.max(multiplier_residual(
                        &s,
                        gamma,
                        m.multiplier(gamma),
                        &samples,
                    ));
                }
                Ok((hol, mul))
            })();
            let mut out = vec![
                Check::new(format!("{name}.r3_membership"), in_r3, 1e-12),
                Check::new(format!("{name}.periodicity"), periodic, 1e-10),
                prolonged,
            ];
            match sections {
                Ok((h, m)) => {
                    out.push(Check::new(format!("{name}.sections.holomorphic"), h, 1e-6));
                    out.push(Check::new(format!("{name}.sections.multiplier"), m, 1e-9));
                }
                Err(e) => out.push(Check::failed(
                    format!("{name}.sections.holomorphic"),
                    1e-6,
                    e,
                )),
            }
            match fam.cmc_test() {
                Ok(rep) if fam.is_round() => {
                    out.push(Check::new(format!("{name}.cmc.spread"), rep.spread(), 1e-6));
                }
                Ok(rep) => out.push(Check::predicate(
                    format!("{name}.cmc.non_constant"),
                    !rep.cmc,
                )),
                Err(e) => out.push(Check::failed(format!("{name}.cmc"), 1e-6, e)),
            }
            if fam.is_round() {
                let round = max_of(pts.iter().map(|&(x, y)| {
                    let expected =
                        -(Quaternion::exp_j(2.0 * PI * u * x) / u) + Quaternion::K * (2.0 * PI * y);
                    fam.eval(x, y).dist(expected)
                }));
                out.push(Check::new(format!("{name}.round_cylinder"), round, 1e-12));
            }
            out
        }),
    )]
}

/// One row of a CMC sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub u: f64,
    pub h0: f64,
    pub h_half: f64,
    pub cmc: bool,
}

/// `steps` values of `u` from the threshold `v√(n² − 1)` to `u_max`.
pub fn sweep(v: f64, n: u32, u_max: f64, steps: usize) -> darboux_core::Result<Vec<SweepRow>> {
    let lo = v * (f64::from(n * n) - 1.0).sqrt();
    if !(u_max > lo) || steps < 2 {
        return Err(darboux_core::Error::InvalidParameter(
            "sweep needs u_max above the threshold and at least two steps",
        ));
    }
    (0..steps)
        .map(|k| {
            let u = if k == 0 {
                lo
            } else {
                lo + (u_max - lo) * k as f64 / (steps - 1) as f64
            };
            let s = BulgeTorusFamily::new(u, v, n)?.mean_curvature_special()?;
            Ok(SweepRow {
                u,
                h0: s.h0,
                h_half: s.h_half,
                cmc: s.cmc,
            })
        })
        .collect()
}

/// The CMC-iff criterion on a sweep: only the first row is CMC.
pub fn sweep_checks(rows: &[SweepRow], v: f64, n: u32, prefix: &str) -> Vec<Check> {
    let mut out = Vec::new();
    if let Some(first) = rows.first() {
        let fam = BulgeTorusFamily::new(first.u, v, n);
        out.push(match fam {
            Ok(f) => {
                let hs: Vec<f64> = (0..512)
                    .filter_map(|k| f.mean_curvature_closed(k as f64 / (512.0 * v)).ok())
                    .collect();
                let max = hs.iter().copied().fold(f64::MIN, f64::max);
                let min = hs.iter().copied().fold(f64::MAX, f64::min);
                Check::new(
                    format!("{prefix}endpoint.spread"),
                    if hs.len() == 512 {
                        max - min
                    } else {
                        f64::INFINITY
                    },
                    1e-9,
                )
            }
            Err(e) => Check::failed(format!("{prefix}endpoint.spread"), 1e-9, e),
        });
        let torus_h = RectangularTorus::new(first.u, v).map(|t| t.mean_curvature());
        out.push(match torus_h {
            Ok(h) => Check::new(
                format!("{prefix}endpoint.torus_value"),
                (first.h0 - h).abs(),
                1e-10,
            ),
            Err(e) => Check::failed(format!("{prefix}endpoint.torus_value"), 1e-10, e),
        });
        out.push(Check::predicate(
            format!("{prefix}endpoint.classified_cmc"),
            first.cmc,
        ));
    }
    let misclassified = rows
        .iter()
        .skip(1)
        .filter(|r| r.cmc || (r.h0 - r.h_half).abs() <= 1e-6)
        .count();
    out.push(Check::new(
        format!("{prefix}interior.cmc_count"),
        misclassified as f64,
        0.0,
    ));
    out
}

/// Library-wide invariants independent of a particular family.
pub fn global_groups(seed: u64) -> Vec<(String, CheckFn<'static>)> {
    let mut groups: Vec<(String, CheckFn<'static>)> = Vec::new();
    groups.push((
        "quat".into(),
        Box::new(move || {
            let mut r = rng(seed.wrapping_add(10));
            let mut draw = move || {
                Quaternion::new(
                    r.random_range(-1.0..1.0),
                    r.random_range(-1.0..1.0),
                    r.random_range(-1.0..1.0),
                    r.random_range(-1.0..1.0),
                )
            };
            let mut conj = 0.0f64;
            let mut norm = 0.0f64;
            for _ in 0..1000 {
                let (q, w) = (draw(), draw());
                if let Ok(unit) = q.normalize() {
                    conj = conj.max(
                        ((unit * w * unit.inv().unwrap_or(Quaternion::ZERO)).re() - w.re()).abs(),
                    );
                }
                norm = norm.max(((q * w).norm() - q.norm() * w.norm()).abs());
            }
            vec![
                Check::new("quat.conjugation_real_part", conj, 1e-12),
                Check::new("quat.norm_multiplicative", norm, 1e-15),
            ]
        }),
    ));
    groups.push((
        "spectral".into(),
        Box::new(move || {
            let mut r = rng(seed.wrapping_add(11));
            let mut mismatches = 0usize;
            for k in 0..20 {
                let (u, v) = (r.random_range(0.3..3.0), r.random_range(0.3..3.0));
                let Ok(torus) = RectangularTorus::new(u, v) else {
                    mismatches += 1;
                    continue;
                };
                let b = if k % 2 == 0 {
                    ComplexPoint::new(r.random_range(-5.0..5.0), r.random_range(-5.0..5.0))
                } else {
                    let p = f64::from(r.random_range(-4..=4i32));
                    let q = f64::from(r.random_range(-4..=4i32));
                    ComplexPoint::new(u / 2.0 + p * u, -v / 2.0 + q * v)
                        + torus.beta0() * ComplexPoint::cis(r.random_range(0.0..2.0 * PI)) * 0.5
                };
                let oracle = brute_force_spectrum(u, v, b);
                let found = spectral_frequencies(&torus, &MultiplierData::with_b(b), SPECTRAL_TOL)
                    .map(|pts| lattice_indices(u, v, pts.iter().map(|p| p.delta)))
                    .unwrap_or_default();
                if found != oracle {
                    mismatches += 1;
                }
            }
            vec![Check::new(
                "spectral.brute_force_mismatches",
                mismatches as f64,
                0.0,
            )]
        }),
    ));
    groups.push((
        "diffgeo".into(),
        Box::new(move || {
            let mut r = rng(seed.wrapping_add(12));
            let curvature = guarded("diffgeo.torus_mean_curvature", 1e-5, || {
                let mut worst = 0.0f64;
                for _ in 0..10 {
                    let t =
                        RectangularTorus::new(r.random_range(0.5..4.0), r.random_range(0.5..4.0))?;
                    let (x, y) = (r.random_range(0.0..1.0), r.random_range(0.0..1.0));
                    worst = worst.max(
                        (mean_curvature_num(&t, x, y, CURVATURE_STEP)?.value - t.mean_curvature())
                            .abs(),
                    );
                }
                Ok(worst)
            });
            let richardson = guarded("diffgeo.richardson_deficit", 0.0, || {
                let t = RectangularTorus::new(2.0, 1.0)?;
                let exact = t.frame(0.1, 0.2).f_x;
                let err = |h: f64| {
                    darboux_core::diffgeo::central_diff(|s| t.eval(s, 0.2), 0.1, h).dist(exact)
                };
                let (e1, e2) = (err(4e-2), err(2e-2));
                Ok((3.5 - e1 / e2).max(0.0))
            });
            vec![curvature, richardson]
        }),
    ));
    groups
}

/// All lattice indices `(p, q)` with `δ = β₀/2 + pu + iqv` on the circle
/// `|δ − B| = |β₀|/2`, by scanning a fixed large box.
pub fn brute_force_spectrum(u: f64, v: f64, b: ComplexPoint) -> Vec<(i64, i64)> {
    let r2 = u * u + v * v;
    let mut out = Vec::new();
    for q in -200..=200i64 {
        for p in -200..=200i64 {
            let re = u / 2.0 + p as f64 * u - b.re;
            let im = -v / 2.0 + q as f64 * v - b.im;
            if (re * re + im * im - r2 / 4.0).abs() <= SPECTRAL_TOL * r2 {
                out.push((p, q));
            }
        }
    }
    out
}

pub fn lattice_indices(
    u: f64,
    v: f64,
    deltas: impl Iterator<Item = ComplexPoint>,
) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = deltas
        .map(|d| {
            (
                ((d.re - u / 2.0) / u).round() as i64,
                ((d.im + v / 2.0) / v).round() as i64,
            )
        })
        .collect();
    out.sort_by_key(|&(p, q)| (q, p));
    out
}
