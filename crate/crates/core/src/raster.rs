//! Deterministic sampling of engines over 2D plane cuts, 3D volumes and
//! 1D rays. Every cell value depends only on its own coordinates, so the
//! grids are bit-identical regardless of how the evaluation is
//! partitioned across worker threads.

use rayon::prelude::*;

use crate::dynamics::Engine;
use crate::spherical::PureQuaternion;
use crate::Error;

/// An axis-aligned cutting plane, `axis = offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Plane {
    X(f64),
    Y(f64),
    Z(f64),
}

impl Plane {
    /// Embeds in-plane coordinates `(u, v)` into 3D. For `z = off` the
    /// pair maps to `(u, v, off)`; for `y = off` to `(u, off, v)`; for
    /// `x = off` to `(off, u, v)`.
    pub fn embed(self, u: f64, v: f64) -> [f64; 3] {
        match self {
            Plane::X(off) => [off, u, v],
            Plane::Y(off) => [u, off, v],
            Plane::Z(off) => [u, v, off],
        }
    }

    pub fn offset(self) -> f64 {
        match self {
            Plane::X(o) | Plane::Y(o) | Plane::Z(o) => o,
        }
    }
}

impl std::fmt::Display for Plane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Plane::X(o) => write!(f, "x={o}"),
            Plane::Y(o) => write!(f, "y={o}"),
            Plane::Z(o) => write!(f, "z={o}"),
        }
    }
}

/// Parameters of a 2D render: window, resolution, depth and engine.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceSpec {
    pub engine: Engine,
    pub plane: Plane,
    /// In-plane window center `(u, v)`.
    pub center: (f64, f64),
    /// In-plane half-widths, both positive.
    pub extent: (f64, f64),
    pub width: u32,
    pub height: u32,
    pub max_iter: u32,
}

impl SliceSpec {
    pub fn validate(&self) -> Result<(), Error> {
        self.engine.validate()?;
        if self.width < 1 || self.height < 1 {
            return Err(Error::TooFew {
                what: "resolution",
                min: 1,
                got: self.width.min(self.height) as u64,
            });
        }
        if !(self.extent.0 > 0.0 && self.extent.1 > 0.0) {
            return Err(Error::NonPositive {
                what: "extent",
                got: self.extent.0.min(self.extent.1),
            });
        }
        if self.max_iter < 1 {
            return Err(Error::TooFew {
                what: "max_iter",
                min: 1,
                got: 0,
            });
        }
        Ok(())
    }

    /// Sample point at the center of cell `(col, row)`. Pixel `(0, 0)`
    /// is the minimum-u, maximum-v corner (image convention: top-left).
    pub fn sample_point(&self, col: u32, row: u32) -> [f64; 3] {
        let du = 2.0 * self.extent.0 / f64::from(self.width);
        let dv = 2.0 * self.extent.1 / f64::from(self.height);
        let u = self.center.0 - self.extent.0 + (f64::from(col) + 0.5) * du;
        let v = self.center.1 + self.extent.1 - (f64::from(row) + 0.5) * dv;
        self.plane.embed(u, v)
    }
}

/// Escape iterations over a 2D window, row-major. Cells hold the first
/// iteration whose norm exceeded the escape radius, or `max_iter` for
/// cells that never escaped (members).
#[derive(Clone, Debug, PartialEq)]
pub struct EscapeGrid {
    pub spec: SliceSpec,
    pub cells: Vec<u32>,
}

impl EscapeGrid {
    #[inline]
    pub fn get(&self, col: u32, row: u32) -> u32 {
        self.cells[row as usize * self.spec.width as usize + col as usize]
    }

    pub fn width(&self) -> u32 {
        self.spec.width
    }

    pub fn height(&self) -> u32 {
        self.spec.height
    }

    pub fn max_iter(&self) -> u32 {
        self.spec.max_iter
    }
}

/// Renders the grid, evaluating rows in parallel.
pub fn render_slice(spec: &SliceSpec) -> EscapeGrid {
    let width = spec.width as usize;
    let height = spec.height as usize;
    let mut cells = vec![0u32; width * height];
    cells
        .par_chunks_mut(width)
        .enumerate()
        .for_each(|(row, line)| {
            for (col, cell) in line.iter_mut().enumerate() {
                let p = spec.sample_point(col as u32, row as u32);
                *cell = spec.engine.escape_at(p, spec.max_iter).iterations;
            }
        });
    EscapeGrid {
        spec: spec.clone(),
        cells,
    }
}

/// Parameters of a 3D render over the box `center ± extent`.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeSpec {
    pub engine: Engine,
    pub center: [f64; 3],
    /// Half-widths along x, y, z, all positive.
    pub extent: [f64; 3],
    /// Voxel counts along x, y, z.
    pub resolution: [u32; 3],
    pub max_iter: u32,
}

impl VolumeSpec {
    pub fn validate(&self) -> Result<(), Error> {
        self.engine.validate()?;
        if self.resolution.iter().any(|&r| r < 1) {
            return Err(Error::TooFew {
                what: "resolution",
                min: 1,
                got: *self.resolution.iter().min().unwrap() as u64,
            });
        }
        if !self.extent.iter().all(|&e| e > 0.0) {
            return Err(Error::NonPositive {
                what: "extent",
                got: self.extent.iter().copied().fold(f64::INFINITY, f64::min),
            });
        }
        if self.max_iter < 1 {
            return Err(Error::TooFew {
                what: "max_iter",
                min: 1,
                got: 0,
            });
        }
        Ok(())
    }

    /// Voxel-center coordinate, axes ascending from the minimum corner.
    pub fn sample_point(&self, ix: u32, iy: u32, iz: u32) -> [f64; 3] {
        let coord = |i: u32, axis: usize, n: u32| {
            let d = 2.0 * self.extent[axis] / f64::from(n);
            self.center[axis] - self.extent[axis] + (f64::from(i) + 0.5) * d
        };
        [
            coord(ix, 0, self.resolution[0]),
            coord(iy, 1, self.resolution[1]),
            coord(iz, 2, self.resolution[2]),
        ]
    }

    /// Length of a voxel's space diagonal.
    pub fn voxel_diagonal(&self) -> f64 {
        let d: f64 = (0..3)
            .map(|a| {
                let s = 2.0 * self.extent[a] / f64::from(self.resolution[a]);
                s * s
            })
            .sum();
        d.sqrt()
    }
}

/// Escape iterations over a 3D box, x-fastest ordering.
#[derive(Clone, Debug, PartialEq)]
pub struct EscapeVolume {
    pub spec: VolumeSpec,
    pub cells: Vec<u32>,
}

impl EscapeVolume {
    #[inline]
    pub fn get(&self, ix: u32, iy: u32, iz: u32) -> u32 {
        let [nx, ny, _] = self.spec.resolution;
        self.cells[(ix as usize) + (nx as usize) * (iy as usize + ny as usize * iz as usize)]
    }
}

/// Renders the volume, evaluating z-layers in parallel.
pub fn render_volume(spec: &VolumeSpec) -> EscapeVolume {
    let [nx, ny, nz] = spec.resolution.map(|r| r as usize);
    let mut cells = vec![0u32; nx * ny * nz];
    cells
        .par_chunks_mut(nx * ny)
        .enumerate()
        .for_each(|(iz, layer)| {
            for iy in 0..ny {
                for ix in 0..nx {
                    let p = spec.sample_point(ix as u32, iy as u32, iz as u32);
                    layer[iy * nx + ix] = spec.engine.escape_at(p, spec.max_iter).iterations;
                }
            }
        });
    EscapeVolume {
        spec: spec.clone(),
        cells,
    }
}

/// One sample of a radial membership scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileSample {
    pub radius: f64,
    /// Escape iteration, or `max_iter` if the orbit never escaped.
    pub iterations: u32,
    pub escaped: bool,
}

/// Samples membership along the ray `c = r * direction/|direction|` for
/// `r` evenly spaced over `[0, r_max]` (endpoints included). Exposes the
/// nested-ball gaps of the metasphere when driven with the quaternionic
/// engine.
pub fn radial_profile(
    engine: &Engine,
    direction: PureQuaternion,
    r_max: f64,
    samples: u32,
    max_iter: u32,
) -> Result<Vec<ProfileSample>, Error> {
    if direction.norm() == 0.0 {
        return Err(Error::ZeroDirection);
    }
    if samples < 2 {
        return Err(Error::TooFew {
            what: "samples",
            min: 2,
            got: samples as u64,
        });
    }
    if !r_max.is_finite() || r_max <= 0.0 {
        return Err(Error::NonPositive {
            what: "r_max",
            got: r_max,
        });
    }
    let dir = direction * (1.0 / direction.norm());
    Ok((0..samples)
        .into_par_iter()
        .map(|i| {
            let radius = r_max * f64::from(i) / f64::from(samples - 1);
            let p = dir * radius;
            let res = engine.escape_at([p.x, p.y, p.z], max_iter);
            ProfileSample {
                radius,
                iterations: res.iterations,
                escaped: res.escaped,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use crate::dynamics::Unit;

    use super::*;

    fn complex_slice(center: (f64, f64), extent: (f64, f64), n: u32, max_iter: u32) -> SliceSpec {
        SliceSpec {
            engine: Engine::Complex,
            plane: Plane::Z(0.0),
            center,
            extent,
            width: n,
            height: n,
            max_iter,
        }
    }

    // independent orbit oracle for the 3x3 example
    fn complex_escape_iter(re: f64, im: f64, max_iter: u32) -> u32 {
        let (mut zr, mut zi) = (0.0f64, 0.0f64);
        for n in 1..=max_iter {
            let nr = zr * zr - zi * zi + re;
            let ni = 2.0 * zr * zi + im;
            zr = nr;
            zi = ni;
            if (zr * zr + zi * zi).sqrt() > 2.0 {
                return n;
            }
        }
        max_iter
    }

    #[test]
    fn three_by_three_complex_window() {
        let spec = complex_slice((-0.5, 0.0), (1.5, 1.5), 3, 10);
        let grid = render_slice(&spec);
        // center cell samples c = -0.5 + 0i, a member
        assert_eq!(grid.get(1, 1), 10);
        for row in 0..3 {
            for col in 0..3 {
                let p = spec.sample_point(col, row);
                assert_eq!(grid.get(col, row), complex_escape_iter(p[0], p[1], 10));
            }
        }
        // top-left is minimum-u, maximum-v
        assert_eq!(spec.sample_point(0, 0), [-1.5, 1.0, 0.0]);
    }

    #[test]
    fn everything_outside_escapes_immediately() {
        let spec = SliceSpec {
            engine: Engine::Spherical,
            plane: Plane::Z(0.0),
            center: (10.0, 10.0),
            extent: (1.0, 1.0),
            width: 4,
            height: 4,
            max_iter: 1,
        };
        let grid = render_slice(&spec);
        assert!(grid.cells.iter().all(|&c| c == 1));
    }

    #[test]
    fn single_voxel_at_origin_is_member() {
        let spec = VolumeSpec {
            engine: Engine::Spherical,
            center: [0.0; 3],
            extent: [1.0; 3],
            resolution: [1, 1, 1],
            max_iter: 25,
        };
        let vol = render_volume(&spec);
        assert_eq!(vol.cells, vec![25]);
    }

    #[test]
    fn volume_outside_radius_escapes() {
        let spec = VolumeSpec {
            engine: Engine::Spherical,
            center: [10.0, 10.0, 10.0],
            extent: [0.5; 3],
            resolution: [2, 2, 2],
            max_iter: 8,
        };
        let vol = render_volume(&spec);
        assert!(vol.cells.iter().all(|&c| c == 1));
    }

    #[test]
    fn volume_ordering_is_x_fastest() {
        let spec = VolumeSpec {
            engine: Engine::Complex,
            center: [0.0; 3],
            extent: [2.0; 3],
            resolution: [3, 2, 2],
            max_iter: 12,
        };
        let vol = render_volume(&spec);
        for iz in 0..2 {
            for iy in 0..2 {
                for ix in 0..3 {
                    let p = spec.sample_point(ix, iy, iz);
                    let want = spec.engine.escape_at(p, 12).iterations;
                    assert_eq!(vol.get(ix, iy, iz), want);
                }
            }
        }
    }

    #[test]
    fn rendering_is_independent_of_worker_count() {
        let spec = complex_slice((-0.5, 0.0), (1.6, 1.6), 64, 48);
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| render_slice(&spec));
        let many = rayon::ThreadPoolBuilder::new()
            .num_threads(7)
            .build()
            .unwrap()
            .install(|| render_slice(&spec));
        assert_eq!(one.cells, many.cells);
    }

    #[test]
    fn escape_counts_are_stable_under_deeper_iteration() {
        let lo = render_slice(&complex_slice((-0.5, 0.0), (1.6, 1.6), 64, 16));
        let hi = render_slice(&complex_slice((-0.5, 0.0), (1.6, 1.6), 64, 64));
        for (a, b) in lo.cells.iter().zip(&hi.cells) {
            if *a < 16 {
                assert_eq!(a, b);
            } else {
                assert!(*b >= 16);
            }
        }
    }

    #[test]
    fn profile_validation() {
        let eng = Engine::quat_slice([Unit::I, Unit::J, Unit::K]).unwrap();
        assert!(matches!(
            radial_profile(&eng, PureQuaternion::ZERO, 2.0, 16, 10),
            Err(Error::ZeroDirection)
        ));
        assert!(matches!(
            radial_profile(&eng, PureQuaternion::K, 2.0, 1, 10),
            Err(Error::TooFew { .. })
        ));
        assert!(matches!(
            radial_profile(&eng, PureQuaternion::K, 0.0, 16, 10),
            Err(Error::NonPositive { .. })
        ));
    }

    #[test]
    fn profile_endpoints_and_membership() {
        let eng = Engine::quat_slice([Unit::I, Unit::J, Unit::K]).unwrap();
        let prof = radial_profile(&eng, PureQuaternion::K, 2.0, 101, 200).unwrap();
        assert_eq!(prof.len(), 101);
        assert_eq!(prof[0].radius, 0.0);
        assert_eq!(prof[100].radius, 2.0);
        // the origin is always a member
        assert!(!prof[0].escaped);
        // everything past the axis extent escapes
        assert!(prof.last().unwrap().escaped);
    }

    #[test]
    fn spec_validation_errors() {
        let mut spec = complex_slice((0.0, 0.0), (1.0, 1.0), 8, 10);
        assert!(spec.validate().is_ok());
        spec.extent = (0.0, 1.0);
        assert!(spec.validate().is_err());
        let mut spec = complex_slice((0.0, 0.0), (1.0, 1.0), 8, 10);
        spec.width = 0;
        assert!(spec.validate().is_err());

        let vol = VolumeSpec {
            engine: Engine::SphericalPower { m: 1 },
            center: [0.0; 3],
            extent: [1.0; 3],
            resolution: [4, 4, 4],
            max_iter: 10,
        };
        assert!(vol.validate().is_err());
    }
}
