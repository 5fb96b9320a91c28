// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use darboux_core::darboux::{BulgeTorusFamily, CylinderFamily};
use darboux_core::diffgeo::ParamSurface;
use darboux_core::mesh::{GridLayout, MeshGrid, ProjectionSpec};
use darboux_core::Quaternion;
use rayon::prelude::*;

use crate::error::{describe, CliError, CliResult};
use crate::io::{write_obj, write_profiles};
use crate::report::{CheckFn, Report};
use crate::suites;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "DARBOUX_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "darboux",
    version,
    about = "Darboux transforms of rectangular tori and cylinders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// n-bulge tori of revolution in S³ from the rectangular torus (u, v).
    TorusFamily {
        #[command(flatten)]
        family: TorusArgs,
        /// Run every invariant of the family.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cylinders of revolution from the standard cylinder (u).
    CylinderFamily {
        #[arg(long)]
        u: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The full invariant suite over the reference parameter sets.
    Verify {
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tabulates H(0), H(1/(2nv)) and the CMC verdict over u ∈ [v·sqrt(n²−1), u_max].
    Sweep {
        #[arg(long, default_value_t = 1.0)]
        v: f64,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 4.0)]
        u_max: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Writes an OBJ mesh of a torus family (stereographic) or, with --a, a cylinder family.
    Mesh {
        #[arg(long)]
        u: f64,
        #[arg(long, default_value_t = 1.0)]
        v: f64,
        /// Bulge count; inferred from u and v when omitted.
        #[arg(long)]
        n: Option<u32>,
        /// Cylinder parameter; selects the cylinder family.
        #[arg(long)]
        a: Option<f64>,
        #[arg(long, default_value = "128x128", value_parser = parse_grid)]
        grid: (usize, usize),
        /// Projection pole as w,x,y,z; chosen automatically when omitted.
        #[arg(long, value_parser = parse_pole)]
        pole: Option<Quaternion>,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Writes the CSV profile y, κ₀, Ĥ, R̂ of a torus family.
    Profile {
        #[command(flatten)]
        family: TorusArgs,
        #[arg(long, default_value_t = 256)]
        ny: usize,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct TorusArgs {
    #[arg(long)]
    pub u: f64,
    #[arg(long, default_value_t = 1.0)]
    pub v: f64,
    #[arg(long)]
    pub n: u32,
    /// Reparametrize to (u/v, 1).
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Seed for randomized sample locations.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    pub json: bool,
    /// Record wall-clock times (makes the report non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("grid must look like 128x128, got {s:?}"))?;
    let nx: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad grid width {a:?}"))?;
    let ny: usize = b
        .trim()
        .parse()
        .map_err(|_| format!("bad grid height {b:?}"))?;
    if nx < 3 || ny < 3 {
        return Err("grid needs at least 3 samples per direction".into());
    }
    Ok((nx, ny))
}

fn parse_pole(s: &str) -> Result<Quaternion, String> {
    let c: Vec<f64> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad pole component {p:?}"))
        })
        .collect::<Result<_, _>>()?;
    match c[..] {
        [w, x, y, z] => Ok(Quaternion::new(w, x, y, z)),
        _ => Err("pole needs four components w,x,y,z".into()),
    }
}

/// Bulge count for a mesh: the gallery parameter sets use n = 2 for
/// u ∈ {1.8, 2.1, 2.6}, n = 3 for {2.9, 3.2, 3.5} and n = 4 for
/// {4.3, 5.3, 6.3} (v = 1); otherwise the largest n with v·sqrt(n²−1) ≤ u.
pub fn infer_n(u: f64, v: f64) -> CliResult<u32> {
    const GALLERY: [(f64, u32); 9] = [
        (1.8, 2),
        (2.1, 2),
        (2.6, 2),
        (2.9, 3),
        (3.2, 3),
        (3.5, 3),
        (4.3, 4),
        (5.3, 4),
        (6.3, 4),
    ];
    if v == 1.0 {
        if let Some(&(_, n)) = GALLERY.iter().find(|(fu, _)| (fu - u).abs() < 1e-12) {
            return Ok(n);
        }
    }
    if !(u.is_finite() && v.is_finite() && u > 0.0 && v > 0.0) {
        return Err(CliError::Invalid(
            "u and v must be positive and finite".into(),
        ));
    }
    let mut n = 1u32;
    while v * (f64::from((n + 1) * (n + 1)) - 1.0).sqrt() <= u {
        n += 1;
    }
    if n < 2 {
        return Err(CliError::Invalid(format!(
            "u must be ≥ v·sqrt(n²−1) = {:.7}… for n = 2; got u = {u}",
            v * 3f64.sqrt()
        )));
    }
    Ok(n)
}

fn torus_family(args: &TorusArgs) -> CliResult<BulgeTorusFamily> {
    let f = if args.normalize {
        BulgeTorusFamily::normalized(args.u, args.v, args.n)
    } else {
        BulgeTorusFamily::new(args.u, args.v, args.n)
    };
    f.map_err(CliError::from)
}

fn emit(report: &Report, out: &OutputArgs) -> CliResult<i32> {
    if out.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.table());
    }
    if let Some(path) = &out.report {
        fs::write(path, report.to_json()).map_err(|e| CliError::io(path, e))?;
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn torus_values(report: &mut Report, fam: &BulgeTorusFamily) -> CliResult<()> {
    let s = fam.mean_curvature_special()?;
    report.value("H0", s.h0);
    report.value("Hhalf", s.h_half);
    report.value("cmc", s.cmc);
    report.value("s", fam.s());
    report.value("rhat_min", fam.denominator_bound().min);
    report.value("torus_H", fam.torus().mean_curvature());
    Ok(())
}

/// Report for `torus-family`; checks run only with `verify`.
pub fn torus_report(args: &TorusArgs, verify: bool, out: &OutputArgs) -> CliResult<Report> {
    let fam = torus_family(args)?;
    let mut report = Report::new("torus-family");
    report.param("u", fam.u());
    report.param("v", fam.v());
    report.param("n", fam.n());
    report.param("seed", out.seed);
    torus_values(&mut report, &fam)?;
    if verify {
        report.run(suites::bulge_groups(fam, out.seed, ""), out.timings);
    }
    Ok(report)
}

pub fn cylinder_report(u: f64, a: f64, verify: bool, out: &OutputArgs) -> CliResult<Report> {
    let fam = CylinderFamily::new(u, a)?;
    let mut report = Report::new("cylinder-family");
    report.param("u", u);
    report.param("a", a);
    let cmc = fam.cmc_test()?;
    report.value("H0", cmc.h0);
    report.value("Hquarter", cmc.h_quarter);
    report.value("spread", cmc.spread());
    report.value("cmc", cmc.cmc);
    if verify {
        report.run(suites::cylinder_groups(fam, "cylinder."), out.timings);
    }
    Ok(report)
}

/// Reference parameter sets of the full suite.
pub const VERIFY_TORI: [(f64, f64, u32); 4] =
    [(2.0, 1.0, 2), (2.9, 1.0, 3), (4.3, 1.0, 4), (3.0, 1.0, 3)];
pub const VERIFY_CYLINDERS: [(f64, f64); 3] = [(2.0, 1.0), (1.5, 1.5), (2.9, 0.4)];

pub fn verify_report(out: &OutputArgs) -> CliResult<Report> {
    let mut report = Report::new("verify");
    report.param("seed", out.seed);
    let mut groups: Vec<(String, CheckFn<'static>)> = suites::global_groups(out.seed);
    let cmc_u = 3f64.sqrt();
    for (u, v, n) in VERIFY_TORI.into_iter().chain([(cmc_u, 1.0, 2)]) {
        let fam = BulgeTorusFamily::new(u, v, n)?;
        groups.extend(suites::bulge_groups(
            fam,
            out.seed,
            &format!("bulge({u},{v},{n})."),
        ));
    }
    for (u, a) in VERIFY_CYLINDERS {
        groups.extend(suites::cylinder_groups(
            CylinderFamily::new(u, a)?,
            &format!("cylinder({u},{a})."),
        ));
    }
    groups.push((
        "sweep".into(),
        Box::new(|| match suites::sweep(1.0, 2, 4.0, 50) {
            Ok(rows) => suites::sweep_checks(&rows, 1.0, 2, "sweep(1,2)."),
            Err(e) => vec![crate::report::Check::failed("sweep(1,2)", 0.0, e)],
        }),
    ));
    report.run(groups, out.timings);
    Ok(report)
}

pub fn sweep_report(
    v: f64,
    n: u32,
    u_max: f64,
    steps: usize,
    out: &OutputArgs,
) -> CliResult<Report> {
    let rows = suites::sweep(v, n, u_max, steps)?;
    let mut report = Report::new("sweep");
    report.param("v", v);
    report.param("n", n);
    report.param("u_max", u_max);
    report.param("steps", steps);
    let table: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| serde_json::json!({"u": r.u, "H0": r.h0, "Hhalf": r.h_half, "cmc": r.cmc}))
        .collect();
    report.value("rows", table);
    let checks = suites::sweep_checks(&rows, v, n, "");
    report.run(
        vec![("sweep".into(), Box::new(move || checks.clone()))],
        out.timings,
    );
    Ok(report)
}

/// Samples rows in parallel and assembles the mesh.
pub fn build_mesh<S: ParamSurface + Sync>(
    surface: &S,
    nx: usize,
    ny: usize,
    spec: &ProjectionSpec,
) -> CliResult<MeshGrid> {
    let layout = GridLayout::new(surface, nx, ny)?;
    let rows: Vec<Vec<Quaternion>> = (0..ny)
        .into_par_iter()
        .map(|j| layout.sample_row(surface, j))
        .collect::<Result<_, _>>()?;
    let samples: Vec<Quaternion> = rows.into_iter().flatten().collect();
    Ok(MeshGrid::from_samples(
        &layout,
        &samples,
        surface.target(),
        spec,
    )?)
}

fn run_command(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::TorusFamily {
            family,
            verify,
            out,
        } => emit(&torus_report(&family, verify, &out)?, &out),
        Command::CylinderFamily { u, a, verify, out } => {
            emit(&cylinder_report(u, a, verify, &out)?, &out)
        }
        Command::Verify { out } => emit(&verify_report(&out)?, &out),
        Command::Sweep {
            v,
            n,
            u_max,
            steps,
            out,
        } => emit(&sweep_report(v, n, u_max, steps, &out)?, &out),
        Command::Mesh {
            u,
            v,
            n,
            a,
            grid,
            pole,
            output,
        } => {
            let spec = match pole {
                Some(p) => ProjectionSpec::with_pole(p)?,
                None => ProjectionSpec::default(),
            };
            let mesh = match a {
                Some(a) => build_mesh(&CylinderFamily::new(u, a)?, grid.0, grid.1, &spec)?,
                None => {
                    let n = match n {
                        Some(n) => n,
                        None => infer_n(u, v)?,
                    };
                    build_mesh(&BulgeTorusFamily::new(u, v, n)?, grid.0, grid.1, &spec)?
                }
            };
            write_obj(&mesh, &output)?;
            println!(
                "wrote {} ({} vertices, {} faces)",
                output.display(),
                mesh.vertices.len(),
                mesh.faces.len()
            );
            Ok(0)
        }
        Command::Profile { family, ny, output } => {
            if ny == 0 {
                return Err(CliError::Invalid("ny must be positive".into()));
            }
            write_profiles(&torus_family(&family)?, ny, &output)?;
            println!("wrote {} ({ny} rows)", output.display());
            Ok(0)
        }
    }
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Invalid(format!(
                "{THREADS_ENV} must be a positive integer, got {raw:?}"
            ))
        })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Invalid(e.to_string()))
}

/// Parses `args` and runs the command, returning the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = thread_pool().and_then(|pool| pool.install(|| run_command(cli)));
    match result {
        Ok(code) => code,
        Err(e) => {
            match &e {
                CliError::Core(inner) => eprintln!("error: {}", describe(inner)),
                other => eprintln!("error: {other}"),
            }
            e.exit_code()
        }
    }
}
