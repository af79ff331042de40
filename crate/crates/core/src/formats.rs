//! File output: binary PGM/PPM images, 16-bit RAW volumes with a
//! key=value sidecar, and CSV tables.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::raster::{EscapeGrid, EscapeVolume, ProfileSample};
use crate::Error;

/// Divergence-layer color cycle applied as `iteration mod 8`; member
/// cells are painted black. Eight steps from deep blue through cyan,
/// green, yellow and red to violet.
pub const DIVERGENCE_PALETTE: [[u8; 3]; 8] = [
    [25, 52, 122],
    [44, 120, 176],
    [60, 184, 186],
    [120, 214, 130],
    [222, 226, 98],
    [246, 166, 54],
    [233, 86, 43],
    [150, 36, 94],
];

/// Binary PGM (P5, maxval 255); pixel value `floor(255 * cell / max_iter)`.
pub fn write_pgm(grid: &EscapeGrid, path: &Path) -> Result<(), Error> {
    let mut w = writer(path)?;
    let run = |w: &mut BufWriter<File>| -> std::io::Result<()> {
        write!(w, "P5\n{} {}\n255\n", grid.width(), grid.height())?;
        let max_iter = u64::from(grid.max_iter().max(1));
        for &cell in &grid.cells {
            w.write_all(&[((255 * u64::from(cell)) / max_iter) as u8])?;
        }
        w.flush()
    };
    run(&mut w).map_err(Error::io(path))
}

/// Binary PPM (P6); members black, divergence layers cycled through the
/// palette as `iteration mod 8`.
pub fn write_ppm(grid: &EscapeGrid, palette: &[[u8; 3]; 8], path: &Path) -> Result<(), Error> {
    let mut w = writer(path)?;
    let run = |w: &mut BufWriter<File>| -> std::io::Result<()> {
        write!(w, "P6\n{} {}\n255\n", grid.width(), grid.height())?;
        for &cell in &grid.cells {
            let rgb = if cell == grid.max_iter() {
                [0, 0, 0]
            } else {
                palette[(cell % 8) as usize]
            };
            w.write_all(&rgb)?;
        }
        w.flush()
    };
    run(&mut w).map_err(Error::io(path))
}

/// Little-endian u16 escape counts, x-fastest, plus a `<path>.meta`
/// sidecar with the generation parameters. `max_iter` must fit 16 bits.
pub fn write_raw(volume: &EscapeVolume, path: &Path) -> Result<(), Error> {
    let spec = &volume.spec;
    if spec.max_iter > u16::MAX as u32 {
        return Err(Error::MaxIterTooLarge(spec.max_iter));
    }
    let mut w = writer(path)?;
    let run = |w: &mut BufWriter<File>| -> std::io::Result<()> {
        for &cell in &volume.cells {
            w.write_all(&(cell as u16).to_le_bytes())?;
        }
        w.flush()
    };
    run(&mut w).map_err(Error::io(path))?;

    let sidecar = sidecar_path(path);
    let mut s = writer(&sidecar)?;
    let run = |s: &mut BufWriter<File>| -> std::io::Result<()> {
        writeln!(s, "format=u16le")?;
        writeln!(s, "order=x-fastest")?;
        writeln!(s, "width={}", spec.resolution[0])?;
        writeln!(s, "height={}", spec.resolution[1])?;
        writeln!(s, "depth={}", spec.resolution[2])?;
        writeln!(s, "max_iter={}", spec.max_iter)?;
        writeln!(s, "engine={}", spec.engine)?;
        for (axis, name) in ["x", "y", "z"].iter().enumerate() {
            writeln!(s, "min_{name}={}", spec.center[axis] - spec.extent[axis])?;
            writeln!(s, "max_{name}={}", spec.center[axis] + spec.extent[axis])?;
        }
        s.flush()
    };
    run(&mut s).map_err(Error::io(&sidecar))
}

/// Sidecar location for a RAW file: the same path with `.meta` appended.
pub fn sidecar_path(raw: &Path) -> PathBuf {
    let mut p = raw.as_os_str().to_owned();
    p.push(".meta");
    PathBuf::from(p)
}

/// Dimensions recovered from a RAW sidecar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RawDims {
    pub width: u32,
    pub height: u32,
    pub depth: u32,
    pub max_iter: u32,
}

/// Reads a RAW volume and its sidecar back; returns cells in x-fastest
/// order.
pub fn read_raw(path: &Path) -> Result<(RawDims, Vec<u16>), Error> {
    let sidecar = sidecar_path(path);
    let text = std::fs::read_to_string(&sidecar).map_err(Error::io(&sidecar))?;
    let field = |key: &str| -> Result<u32, Error> {
        text.lines()
            .find_map(|l| l.strip_prefix(key).and_then(|l| l.strip_prefix('=')))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::BadSidecar {
                path: sidecar.clone(),
                detail: format!("missing or invalid `{key}`"),
            })
    };
    let dims = RawDims {
        width: field("width")?,
        height: field("height")?,
        depth: field("depth")?,
        max_iter: field("max_iter")?,
    };
    let count = dims.width as usize * dims.height as usize * dims.depth as usize;
    let mut bytes = Vec::with_capacity(count * 2);
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(Error::io(path))?;
    if bytes.len() != count * 2 {
        return Err(Error::BadSidecar {
            path: path.to_owned(),
            detail: format!("expected {} bytes, found {}", count * 2, bytes.len()),
        });
    }
    let cells = bytes
        .chunks_exact(2)
        .map(|b| u16::from_le_bytes([b[0], b[1]]))
        .collect();
    Ok((dims, cells))
}

/// CSV table of a 2D grid: `col,row,u,v,escape_iteration`, one row per
/// sample.
pub fn write_grid_csv(grid: &EscapeGrid, path: &Path) -> Result<(), Error> {
    let mut w = writer(path)?;
    let run = |w: &mut BufWriter<File>| -> std::io::Result<()> {
        writeln!(w, "col,row,u,v,escape_iteration")?;
        for row in 0..grid.height() {
            for col in 0..grid.width() {
                let p = grid.spec.sample_point(col, row);
                let (u, v) = match grid.spec.plane {
                    crate::raster::Plane::X(_) => (p[1], p[2]),
                    crate::raster::Plane::Y(_) => (p[0], p[2]),
                    crate::raster::Plane::Z(_) => (p[0], p[1]),
                };
                writeln!(w, "{col},{row},{u},{v},{}", grid.get(col, row))?;
            }
        }
        w.flush()
    };
    run(&mut w).map_err(Error::io(path))
}

/// CSV table of a radial profile: `radius,escape_iteration`.
pub fn write_profile_csv(samples: &[ProfileSample], path: &Path) -> Result<(), Error> {
    let mut w = writer(path)?;
    let run = |w: &mut BufWriter<File>| -> std::io::Result<()> {
        writeln!(w, "radius,escape_iteration")?;
        for s in samples {
            writeln!(w, "{},{}", s.radius, s.iterations)?;
        }
        w.flush()
    };
    run(&mut w).map_err(Error::io(path))
}

fn writer(path: &Path) -> Result<BufWriter<File>, Error> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(Error::io(path))
}

#[cfg(test)]
mod tests {
    use crate::dynamics::Engine;
    use crate::raster::{render_volume, Plane, SliceSpec, VolumeSpec};

    use super::*;

    fn tiny_grid(cells: Vec<u32>, width: u32, height: u32, max_iter: u32) -> EscapeGrid {
        EscapeGrid {
            spec: SliceSpec {
                engine: Engine::Complex,
                plane: Plane::Z(0.0),
                center: (0.0, 0.0),
                extent: (1.0, 1.0),
                width,
                height,
                max_iter,
            },
            cells,
        }
    }

    #[test]
    fn pgm_extreme_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.pgm");

        write_pgm(&tiny_grid(vec![100], 1, 1, 100), &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(&bytes[..9], b"P5\n1 1\n25");
        assert_eq!(*bytes.last().unwrap(), 255);

        write_pgm(&tiny_grid(vec![0], 1, 1, 100), &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(*bytes.last().unwrap(), 0);
    }

    #[test]
    fn ppm_members_are_black() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.ppm");
        write_ppm(
            &tiny_grid(vec![9, 32], 2, 1, 32),
            &DIVERGENCE_PALETTE,
            &path,
        )
        .unwrap();
        let bytes = std::fs::read(&path).unwrap();
        let pix = &bytes[bytes.len() - 6..];
        assert_eq!(&pix[0..3], &DIVERGENCE_PALETTE[1]); // 9 % 8 == 1
        assert_eq!(&pix[3..6], &[0, 0, 0]);
    }

    #[test]
    fn raw_round_trip_is_lossless() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.raw");
        let spec = VolumeSpec {
            engine: Engine::Spherical,
            center: [0.0; 3],
            extent: [2.0; 3],
            resolution: [5, 4, 3],
            max_iter: 20,
        };
        let vol = render_volume(&spec);
        write_raw(&vol, &path).unwrap();
        let (dims, cells) = read_raw(&path).unwrap();
        assert_eq!((dims.width, dims.height, dims.depth), (5, 4, 3));
        assert_eq!(dims.max_iter, 20);
        let original: Vec<u16> = vol.cells.iter().map(|&c| c as u16).collect();
        assert_eq!(cells, original);
    }

    #[test]
    fn raw_rejects_oversized_max_iter() {
        let dir = tempfile::tempdir().unwrap();
        let vol = EscapeVolume {
            spec: VolumeSpec {
                engine: Engine::Spherical,
                center: [0.0; 3],
                extent: [1.0; 3],
                resolution: [1, 1, 1],
                max_iter: 70_000,
            },
            cells: vec![1],
        };
        assert!(matches!(
            write_raw(&vol, &dir.path().join("v.raw")),
            Err(Error::MaxIterTooLarge(70_000))
        ));
    }

    #[test]
    fn csv_headers_and_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.csv");
        write_grid_csv(&tiny_grid(vec![1, 2, 3, 4], 2, 2, 10), &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("col,row,u,v,escape_iteration"));
        assert_eq!(lines.count(), 4);

        let path = dir.path().join("p.csv");
        let samples = vec![
            ProfileSample {
                radius: 0.0,
                iterations: 10,
                escaped: false,
            },
            ProfileSample {
                radius: 2.0,
                iterations: 1,
                escaped: true,
            },
        ];
        write_profile_csv(&samples, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "radius,escape_iteration\n0,10\n2,1\n");
    }

    #[test]
    fn io_errors_carry_the_path() {
        let err = write_pgm(
            &tiny_grid(vec![1], 1, 1, 10),
            Path::new("/nonexistent-dir/x.pgm"),
        )
        .unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.pgm"));
    }
}
