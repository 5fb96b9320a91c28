// SPDX-License-Identifier: Apache-2.0

//! Grid sampling and stereographic projection of sampled surfaces.

use alloc::vec::Vec;

use crate::diffgeo::{ParamSurface, Target};
use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Default clearance between the projection pole and every sample.
pub const DEFAULT_MIN_POLE_DISTANCE: f64 = 1e-3;

const SPHERE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionSpec {
    /// `None` selects the clearest of [`pole_candidates`].
    pub pole: Option<Quaternion>,
    pub min_pole_distance: f64,
}

impl Default for ProjectionSpec {
    fn default() -> Self {
        Self {
            pole: None,
            min_pole_distance: DEFAULT_MIN_POLE_DISTANCE,
        }
    }
}

impl ProjectionSpec {
    pub fn with_pole(pole: Quaternion) -> Result<Self> {
        if (pole.norm() - 1.0).abs() > SPHERE_TOL {
            return Err(Error::InvalidParameter("pole must be a unit quaternion"));
        }
        Ok(Self {
            pole: Some(pole),
            ..Self::default()
        })
    }
}

/// The 24 Hurwitz units, `−1` first.
pub fn pole_candidates() -> [Quaternion; 24] {
    let mut out = [Quaternion::ZERO; 24];
    out[0] = -Quaternion::ONE;
    out[1] = Quaternion::ONE;
    let axes = [Quaternion::I, Quaternion::J, Quaternion::K];
    for (i, a) in axes.iter().enumerate() {
        out[2 + 2 * i] = *a;
        out[3 + 2 * i] = -*a;
    }
    for bits in 0..16u32 {
        let s = |b: u32| if bits & (1 << b) == 0 { 0.5 } else { -0.5 };
        out[8 + bits as usize] = Quaternion::new(s(0), s(1), s(2), s(3));
    }
    out
}

fn rotate_to_south(p: Quaternion, pole: Quaternion) -> Quaternion {
    -(pole.conj() * p)
}

/// Stereographic chart `S³ \ {pole} → ℝ³`.
///
/// `p` is first rotated to `p' = −P̄p`, which sends the pole to `−1`, and
/// then mapped to `Im(p') / (1 + Re p')`.
pub fn stereographic(p: Quaternion, pole: Quaternion, min_pole_distance: f64) -> Result<[f64; 3]> {
    if (p.norm() - 1.0).abs() > SPHERE_TOL {
        return Err(Error::InvalidParameter("point must lie on the unit sphere"));
    }
    let distance = p.dist(pole);
    if !(distance > min_pole_distance) {
        return Err(Error::NearPole { distance });
    }
    let q = rotate_to_south(p, pole);
    let d = 1.0 + q.w;
    Ok([q.x / d, q.y / d, q.z / d])
}

pub fn inverse_stereographic(point: [f64; 3], pole: Quaternion) -> Quaternion {
    let [a, b, c] = point;
    let s = a * a + b * b + c * c;
    let q = Quaternion::new(1.0 - s, 2.0 * a, 2.0 * b, 2.0 * c) / (1.0 + s);
    -(pole * q)
}

/// Sample positions of an `nx × ny` grid over one fundamental domain.
///
/// Directions with a translation (cylinders) are sampled on a closed
/// interval and not wrapped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridLayout {
    pub nx: usize,
    pub ny: usize,
    pub px: f64,
    pub py: f64,
    pub wrap_x: bool,
    pub wrap_y: bool,
}

impl GridLayout {
    pub fn new<S: ParamSurface + ?Sized>(surface: &S, nx: usize, ny: usize) -> Result<Self> {
        if nx < 3 || ny < 3 {
            return Err(Error::InvalidParameter(
                "grid needs at least 3 samples per direction",
            ));
        }
        let periods = surface
            .periods()
            .ok_or(Error::InvalidParameter("surface has no periods"))?;
        Ok(Self {
            nx,
            ny,
            px: periods.x,
            py: periods.y,
            wrap_x: true,
            wrap_y: periods.y_translation.is_none(),
        })
    }

    pub fn x(&self, i: usize) -> f64 {
        self.px * i as f64 / self.nx as f64
    }

    pub fn y(&self, j: usize) -> f64 {
        if self.wrap_y {
            self.py * j as f64 / self.ny as f64
        } else {
            self.py * j as f64 / (self.ny - 1) as f64
        }
    }

    /// Samples of row `j`, `f(x_0, y_j) … f(x_{nx−1}, y_j)`.
    pub fn sample_row<S: ParamSurface + ?Sized>(
        &self,
        surface: &S,
        j: usize,
    ) -> Result<Vec<Quaternion>> {
        let y = self.y(j);
        (0..self.nx)
            .map(|i| {
                let x = self.x(i);
                let p = surface.eval(x, y);
                if p.is_finite() {
                    Ok(p)
                } else {
                    Err(Error::NonFinite { x, y })
                }
            })
            .collect()
    }

    pub fn face_count(&self) -> usize {
        let rows = if self.wrap_y { self.ny } else { self.ny - 1 };
        2 * self.nx * rows
    }

    /// Counter-clockwise triangles; vertex `(i, j)` has index `j·nx + i`.
    pub fn faces(&self) -> Vec<[usize; 3]> {
        let rows = if self.wrap_y { self.ny } else { self.ny - 1 };
        let mut faces = Vec::with_capacity(self.face_count());
        for j in 0..rows {
            let j1 = (j + 1) % self.ny;
            for i in 0..self.nx {
                let i1 = (i + 1) % self.nx;
                let (a, b) = (j * self.nx + i, j * self.nx + i1);
                let (c, d) = (j1 * self.nx + i1, j1 * self.nx + i);
                faces.push([a, b, c]);
                faces.push([a, c, d]);
            }
        }
        faces
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshGrid {
    pub nx: usize,
    pub ny: usize,
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    pub wrap_x: bool,
    pub wrap_y: bool,
    /// Pole used for S³ surfaces.
    pub pole: Option<Quaternion>,
}

/// Minimum distance from `pole` to the samples.
pub fn clearance(samples: &[Quaternion], pole: Quaternion) -> f64 {
    samples
        .iter()
        .map(|p| p.dist(pole))
        .fold(f64::INFINITY, f64::min)
}

fn choose_pole(samples: &[Quaternion], spec: &ProjectionSpec) -> Result<Quaternion> {
    let pole = match spec.pole {
        Some(p) => p,
        None => {
            let mut best = (f64::NEG_INFINITY, -Quaternion::ONE);
            for c in pole_candidates() {
                let d = clearance(samples, c);
                if d > best.0 {
                    best = (d, c);
                }
            }
            best.1
        }
    };
    let distance = clearance(samples, pole);
    if !(distance > spec.min_pole_distance) {
        return Err(Error::NearPole { distance });
    }
    Ok(pole)
}

fn area2(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let n = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    libm::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2])
}

impl MeshGrid {
    /// Builds the mesh from row-major samples (`layout.nx · layout.ny` of them).
    pub fn from_samples(
        layout: &GridLayout,
        samples: &[Quaternion],
        target: Target,
        spec: &ProjectionSpec,
    ) -> Result<Self> {
        if samples.len() != layout.nx * layout.ny {
            return Err(Error::InvalidParameter(
                "sample count does not match the grid",
            ));
        }
        let (vertices, pole) = match target {
            Target::S3 => {
                let pole = choose_pole(samples, spec)?;
                let v = samples
                    .iter()
                    .map(|&p| stereographic(p, pole, spec.min_pole_distance))
                    .collect::<Result<Vec<_>>>()?;
                (v, Some(pole))
            }
            Target::R3 => (samples.iter().map(|p| [p.w, p.y, p.z]).collect(), None),
            Target::R4 => return Err(Error::UnsupportedTarget),
        };
        let faces = layout.faces();
        for f in &faces {
            if !(area2(vertices[f[0]], vertices[f[1]], vertices[f[2]]) > 0.0) {
                let i = f[0] % layout.nx;
                let j = f[0] / layout.nx;
                return Err(Error::DegeneratePoint {
                    x: layout.x(i),
                    y: layout.y(j),
                });
            }
        }
        Ok(Self {
            nx: layout.nx,
            ny: layout.ny,
            vertices,
            faces,
            wrap_x: layout.wrap_x,
            wrap_y: layout.wrap_y,
            pole,
        })
    }
}

/// Samples `surface` over one fundamental domain and projects to ℝ³.
///
/// S³ surfaces go through [`stereographic`], ℝ³ surfaces (in `Span{1, j, k}`)
/// use their `(1, j, k)` coordinates.
pub fn sample_grid<S: ParamSurface + ?Sized>(
    surface: &S,
    nx: usize,
    ny: usize,
    spec: &ProjectionSpec,
) -> Result<MeshGrid> {
    let layout = GridLayout::new(surface, nx, ny)?;
    let mut samples = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        samples.extend(layout.sample_row(surface, j)?);
    }
    MeshGrid::from_samples(&layout, &samples, surface.target(), spec)
}
