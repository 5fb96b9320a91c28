// SPDX-License-Identifier: Apache-2.0

//! OBJ meshes and CSV profiles.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use darboux_core::darboux::BulgeTorusFamily;
use darboux_core::mesh::MeshGrid;

use crate::error::{CliError, CliResult};

pub const PROFILE_HEADER: &str = "y,kappa0,H,Rhat";

/// ASCII OBJ: `v x y z` lines, then 1-based `f a b c` lines.
///
/// Coordinates use the shortest representation that parses back to the
/// same `f64`.
pub fn obj_string(mesh: &MeshGrid) -> String {
    let mut out = String::with_capacity(mesh.vertices.len() * 48 + mesh.faces.len() * 24);
    for [x, y, z] in &mesh.vertices {
        let _ = writeln!(out, "v {x} {y} {z}");
    }
    for [a, b, c] in &mesh.faces {
        let _ = writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1);
    }
    out
}

pub fn write_obj(mesh: &MeshGrid, path: &Path) -> CliResult<()> {
    fs::write(path, obj_string(mesh)).map_err(|e| CliError::io(path, e))
}

/// Vertices and 0-based faces of an OBJ produced by [`write_obj`].
#[derive(Debug, Clone, PartialEq)]
pub struct ObjData {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

pub fn parse_obj(text: &str) -> CliResult<ObjData> {
    let mut data = ObjData {
        vertices: Vec::new(),
        faces: Vec::new(),
    };
    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        let mut parts = line.split_whitespace();
        let bad = |reason| CliError::Obj {
            line: line_no,
            reason,
        };
        match parts.next() {
            None => {}
            Some(tag) if tag.starts_with('#') => {}
            Some("v") => {
                let mut c = [0.0; 3];
                for slot in &mut c {
                    *slot = parts
                        .next()
                        .ok_or(bad("vertex needs three coordinates"))?
                        .parse()
                        .map_err(|_| bad("bad coordinate"))?;
                }
                data.vertices.push(c);
            }
            Some("f") => {
                let mut f = [0usize; 3];
                for slot in &mut f {
                    let idx: usize = parts
                        .next()
                        .ok_or(bad("face needs three indices"))?
                        .parse()
                        .map_err(|_| bad("bad index"))?;
                    if idx == 0 {
                        return Err(bad("indices are 1-based"));
                    }
                    *slot = idx - 1;
                }
                data.faces.push(f);
            }
            Some(_) => return Err(bad("unknown record")),
        }
        if parts.next().is_some() {
            return Err(CliError::Obj {
                line: line_no,
                reason: "trailing fields",
            });
        }
    }
    let count = data.vertices.len();
    if data.faces.iter().flatten().any(|&i| i >= count) {
        return Err(CliError::Obj {
            line: 0,
            reason: "face index out of range",
        });
    }
    Ok(data)
}

/// `y, κ₀(y), Ĥ(y), R̂(y)` at `y_i = i/(ny·v)`, `i = 0..ny`.
pub fn profiles_string(family: &BulgeTorusFamily, ny: usize) -> CliResult<String> {
    let mut out = String::from(PROFILE_HEADER);
    out.push('\n');
    for i in 0..ny {
        let y = i as f64 / (ny as f64 * family.v());
        let h = family.mean_curvature_closed(y)?;
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            y,
            family.kappa0(y),
            h,
            family.rhat(y)
        );
    }
    Ok(out)
}

pub fn write_profiles(family: &BulgeTorusFamily, ny: usize, path: &Path) -> CliResult<()> {
    let text = profiles_string(family, ny)?;
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}
