//! Command-line front end: 2D/3D escape-time renders, radial profiles
//! and the numerical verification suite. Exit codes: 0 on success (and
//! all checks passing), 1 on runtime or check failure, 2 on usage
//! errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mandelsphere::dynamics::Unit;
use mandelsphere::formats;
use mandelsphere::raster::{self, Plane, SliceSpec, VolumeSpec};
use mandelsphere::verify;
use mandelsphere::{Engine, PureQuaternion};

#[derive(Parser)]
#[command(
    name = "mandelsphere",
    version,
    about = "Escape-time renders and checks for spherical quaternion Mandelbrot sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render a 2D plane cut (PGM, PPM, CSV or RAW)
    Render2d(Render2dArgs),
    /// Render a 3D volume (RAW escape counts plus a sidecar)
    Render3d(Render3dArgs),
    /// Scan membership along a ray from the origin (CSV)
    Profile(ProfileArgs),
    /// Run the verification suite or a single named check
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Family {
    Complex,
    Quat,
    QuatSlice,
    Spherical,
    SphericalM,
    SphericalAb,
}

#[derive(Args)]
struct EngineArgs {
    /// Engine family
    #[arg(long, value_enum)]
    engine: Family,
    /// Power for spherical-m (>= 2)
    #[arg(long)]
    m: Option<u32>,
    /// Polar-angle multiplier for spherical-ab
    #[arg(long)]
    a: Option<f64>,
    /// Azimuth multiplier for spherical-ab
    #[arg(long)]
    b: Option<f64>,
    /// Slice units for quat-slice, e.g. `1,i,j` (quat defaults to i,j,k)
    #[arg(long)]
    units: Option<String>,
}

#[derive(Args)]
struct Render2dArgs {
    #[command(flatten)]
    engine: EngineArgs,
    /// Cutting plane, `axis=offset` with axis x, y or z
    #[arg(long, default_value = "z=0")]
    plane: String,
    /// Window center `u,v`
    #[arg(long, default_value = "0,0")]
    center: String,
    /// Window half-widths `u,v` (default: the engine's escape radius)
    #[arg(long)]
    extent: Option<String>,
    /// Resolution `WxH` (or a single number for a square)
    #[arg(long, default_value = "256x256")]
    res: String,
    #[arg(long, default_value_t = 100)]
    max_iter: u32,
    #[arg(long, value_enum, default_value_t = Format2d::Pgm)]
    format: Format2d,
    /// Output path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format2d {
    Pgm,
    Ppm,
    Csv,
    Raw,
}

#[derive(Args)]
struct Render3dArgs {
    #[command(flatten)]
    engine: EngineArgs,
    /// Box center `x,y,z`
    #[arg(long, default_value = "0,0,0")]
    center: String,
    /// Box half-widths `x,y,z` (default: the engine's escape radius)
    #[arg(long)]
    extent: Option<String>,
    /// Resolution `NxNxN` or a single number for a cube
    #[arg(long, default_value = "64")]
    res: String,
    /// Must fit 16-bit voxels (<= 65535)
    #[arg(long, default_value_t = 100)]
    max_iter: u32,
    /// Output path (RAW; a `.meta` sidecar is written next to it)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    engine: EngineArgs,
    /// Ray direction `x,y,z` (normalized internally)
    #[arg(long, default_value = "1,0,0")]
    dir: String,
    /// Largest sampled radius (default: the engine's escape radius)
    #[arg(long)]
    rmax: Option<f64>,
    #[arg(long, default_value_t = 4096)]
    samples: u32,
    #[arg(long, default_value_t = 1000)]
    max_iter: u32,
    /// Output path (CSV)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every check (`--suite all`, the default)
    #[arg(long, conflicts_with = "check")]
    suite: Option<String>,
    /// Run a single check by id
    #[arg(long)]
    check: Option<String>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

enum AppError {
    Usage(String),
    Runtime(String),
}

impl From<mandelsphere::Error> for AppError {
    fn from(e: mandelsphere::Error) -> Self {
        match e {
            mandelsphere::Error::Io { .. } => AppError::Runtime(e.to_string()),
            _ => AppError::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, AppError> {
    match cli.command {
        Command::Render2d(args) => render2d(args),
        Command::Render3d(args) => render3d(args),
        Command::Profile(args) => profile(args),
        Command::Verify(args) => verify_cmd(args),
    }
}

impl EngineArgs {
    fn build(&self) -> Result<Engine, AppError> {
        let reject = |flag: &str, used: bool| {
            if used {
                Err(AppError::Usage(format!(
                    "--{flag} does not apply to this engine family"
                )))
            } else {
                Ok(())
            }
        };
        match self.engine {
            Family::Complex | Family::Spherical | Family::Quat | Family::QuatSlice => {
                reject("m", self.m.is_some())?;
                reject("a", self.a.is_some())?;
                reject("b", self.b.is_some())?;
            }
            Family::SphericalM => {
                reject("a", self.a.is_some())?;
                reject("b", self.b.is_some())?;
                reject("units", self.units.is_some())?;
            }
            Family::SphericalAb => {
                reject("m", self.m.is_some())?;
                reject("units", self.units.is_some())?;
            }
        }
        match self.engine {
            Family::Complex => {
                reject("units", self.units.is_some())?;
                Ok(Engine::Complex)
            }
            Family::Spherical => {
                reject("units", self.units.is_some())?;
                Ok(Engine::Spherical)
            }
            Family::Quat => {
                let units = match &self.units {
                    Some(s) => parse_units(s)?,
                    None => [Unit::I, Unit::J, Unit::K],
                };
                Ok(Engine::quat_slice(units)?)
            }
            Family::QuatSlice => {
                let s = self.units.as_ref().ok_or_else(|| {
                    AppError::Usage(
                        "--units is required for quat-slice (e.g. --units 1,i,j)".into(),
                    )
                })?;
                Ok(Engine::quat_slice(parse_units(s)?)?)
            }
            Family::SphericalM => {
                let m = self.m.ok_or_else(|| {
                    AppError::Usage("--m is required for spherical-m (an integer >= 2)".into())
                })?;
                if m < 2 {
                    return Err(AppError::Usage(format!("--m must be at least 2, got {m}")));
                }
                Ok(Engine::spherical_power(m)?)
            }
            Family::SphericalAb => {
                let a = self.a.ok_or_else(|| {
                    AppError::Usage("--a is required for spherical-ab (a real multiplier)".into())
                })?;
                let b = self.b.ok_or_else(|| {
                    AppError::Usage("--b is required for spherical-ab (a real multiplier)".into())
                })?;
                Ok(Engine::SphericalAb { a, b })
            }
        }
    }
}

fn render2d(args: Render2dArgs) -> Result<ExitCode, AppError> {
    let engine = args.engine.build()?;
    let radius = engine.escape_radius();
    let plane = parse_plane(&args.plane)?;
    let center = parse_pair("center", &args.center)?;
    let extent = match &args.extent {
        Some(s) => parse_pair("extent", s)?,
        None => (radius, radius),
    };
    let (width, height) = parse_res2(&args.res)?;
    if args.max_iter < 1 {
        return Err(AppError::Usage("--max-iter must be at least 1".into()));
    }
    if args.format == Format2d::Raw && args.max_iter > u16::MAX as u32 {
        return Err(AppError::Usage(format!(
            "--max-iter must be <= 65535 for raw output, got {}",
            args.max_iter
        )));
    }
    let spec = SliceSpec {
        engine,
        plane,
        center,
        extent,
        width,
        height,
        max_iter: args.max_iter,
    };
    spec.validate()?;
    let grid = raster::render_slice(&spec);
    match args.format {
        Format2d::Pgm => formats::write_pgm(&grid, &args.out).map_err(runtime)?,
        Format2d::Ppm => {
            formats::write_ppm(&grid, &formats::DIVERGENCE_PALETTE, &args.out).map_err(runtime)?
        }
        Format2d::Csv => formats::write_grid_csv(&grid, &args.out).map_err(runtime)?,
        Format2d::Raw => {
            // a depth-1 volume with the same window
            let vspec = VolumeSpec {
                engine: spec.engine.clone(),
                center: spec.plane.embed(spec.center.0, spec.center.1),
                extent: match spec.plane {
                    Plane::X(_) => [f64::MIN_POSITIVE, spec.extent.0, spec.extent.1],
                    Plane::Y(_) => [spec.extent.0, f64::MIN_POSITIVE, spec.extent.1],
                    Plane::Z(_) => [spec.extent.0, spec.extent.1, f64::MIN_POSITIVE],
                },
                resolution: match spec.plane {
                    Plane::X(_) => [1, spec.width, spec.height],
                    Plane::Y(_) => [spec.width, 1, spec.height],
                    Plane::Z(_) => [spec.width, spec.height, 1],
                },
                max_iter: spec.max_iter,
            };
            let vol = raster::render_volume(&vspec);
            formats::write_raw(&vol, &args.out).map_err(runtime)?;
        }
    }
    println!(
        "wrote {} engine={} plane={} center={},{} extent={},{} res={}x{} max_iter={} format={}",
        args.out.display(),
        spec.engine,
        spec.plane,
        spec.center.0,
        spec.center.1,
        spec.extent.0,
        spec.extent.1,
        spec.width,
        spec.height,
        spec.max_iter,
        match args.format {
            Format2d::Pgm => "pgm",
            Format2d::Ppm => "ppm",
            Format2d::Csv => "csv",
            Format2d::Raw => "raw",
        },
    );
    Ok(ExitCode::SUCCESS)
}

fn render3d(args: Render3dArgs) -> Result<ExitCode, AppError> {
    let engine = args.engine.build()?;
    let radius = engine.escape_radius();
    let center = parse_triple("center", &args.center)?;
    let extent = match &args.extent {
        Some(s) => parse_triple("extent", s)?,
        None => (radius, radius, radius),
    };
    let resolution = parse_res3(&args.res)?;
    if args.max_iter < 1 {
        return Err(AppError::Usage("--max-iter must be at least 1".into()));
    }
    if args.max_iter > u16::MAX as u32 {
        return Err(AppError::Usage(format!(
            "--max-iter must be <= 65535 for 16-bit voxels, got {}",
            args.max_iter
        )));
    }
    let spec = VolumeSpec {
        engine,
        center: [center.0, center.1, center.2],
        extent: [extent.0, extent.1, extent.2],
        resolution,
        max_iter: args.max_iter,
    };
    spec.validate()?;
    let vol = raster::render_volume(&spec);
    formats::write_raw(&vol, &args.out).map_err(runtime)?;
    println!(
        "wrote {} (+ sidecar {}) engine={} center={},{},{} extent={},{},{} res={}x{}x{} max_iter={}",
        args.out.display(),
        formats::sidecar_path(&args.out).display(),
        spec.engine,
        spec.center[0],
        spec.center[1],
        spec.center[2],
        spec.extent[0],
        spec.extent[1],
        spec.extent[2],
        spec.resolution[0],
        spec.resolution[1],
        spec.resolution[2],
        spec.max_iter,
    );
    Ok(ExitCode::SUCCESS)
}

fn profile(args: ProfileArgs) -> Result<ExitCode, AppError> {
    let engine = args.engine.build()?;
    let dir = parse_triple("dir", &args.dir)?;
    let direction = PureQuaternion::new(dir.0, dir.1, dir.2);
    let r_max = args.rmax.unwrap_or_else(|| engine.escape_radius());
    if args.max_iter < 1 {
        return Err(AppError::Usage("--max-iter must be at least 1".into()));
    }
    let samples = raster::radial_profile(&engine, direction, r_max, args.samples, args.max_iter)?;
    formats::write_profile_csv(&samples, &args.out).map_err(runtime)?;
    println!(
        "wrote {} engine={} dir={},{},{} rmax={} samples={} max_iter={}",
        args.out.display(),
        engine,
        dir.0,
        dir.1,
        dir.2,
        r_max,
        args.samples,
        args.max_iter,
    );
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(args: VerifyArgs) -> Result<ExitCode, AppError> {
    if let Some(suite) = &args.suite {
        if suite != "all" {
            return Err(AppError::Usage(format!(
                "--suite only accepts `all`, got `{suite}`"
            )));
        }
    }
    let reports = match &args.check {
        Some(id) => vec![verify::run_check(id, args.seed)?],
        None => verify::run_all(args.seed),
    };
    let mut failed = 0;
    for report in &reports {
        println!("{report}");
        if !report.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all {} checks passed (seed {})", reports.len(), args.seed);
        Ok(ExitCode::SUCCESS)
    } else {
        println!(
            "{failed} of {} checks failed (seed {})",
            reports.len(),
            args.seed
        );
        Ok(ExitCode::from(1))
    }
}

fn runtime(e: mandelsphere::Error) -> AppError {
    AppError::Runtime(e.to_string())
}

fn parse_pair(flag: &str, s: &str) -> Result<(f64, f64), AppError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(AppError::Usage(format!(
            "--{flag} expects two comma-separated numbers, got `{s}`"
        )));
    }
    Ok((parse_num(flag, parts[0])?, parse_num(flag, parts[1])?))
}

fn parse_triple(flag: &str, s: &str) -> Result<(f64, f64, f64), AppError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(AppError::Usage(format!(
            "--{flag} expects three comma-separated numbers, got `{s}`"
        )));
    }
    Ok((
        parse_num(flag, parts[0])?,
        parse_num(flag, parts[1])?,
        parse_num(flag, parts[2])?,
    ))
}

fn parse_num(flag: &str, s: &str) -> Result<f64, AppError> {
    s.trim()
        .parse()
        .map_err(|_| AppError::Usage(format!("--{flag}: `{s}` is not a number")))
}

fn parse_res2(s: &str) -> Result<(u32, u32), AppError> {
    let bad = || AppError::Usage(format!("--res expects `WxH` or a single number, got `{s}`"));
    let dims: Vec<&str> = s.split('x').collect();
    match dims.len() {
        1 => {
            let n: u32 = dims[0].trim().parse().map_err(|_| bad())?;
            Ok((n, n))
        }
        2 => Ok((
            dims[0].trim().parse().map_err(|_| bad())?,
            dims[1].trim().parse().map_err(|_| bad())?,
        )),
        _ => Err(bad()),
    }
}

fn parse_res3(s: &str) -> Result<[u32; 3], AppError> {
    let bad = || {
        AppError::Usage(format!(
            "--res expects `NxNxN` or a single number, got `{s}`"
        ))
    };
    let dims: Vec<&str> = s.split('x').collect();
    match dims.len() {
        1 => {
            let n: u32 = dims[0].trim().parse().map_err(|_| bad())?;
            Ok([n, n, n])
        }
        3 => Ok([
            dims[0].trim().parse().map_err(|_| bad())?,
            dims[1].trim().parse().map_err(|_| bad())?,
            dims[2].trim().parse().map_err(|_| bad())?,
        ]),
        _ => Err(bad()),
    }
}

fn parse_plane(s: &str) -> Result<Plane, AppError> {
    let bad = || {
        AppError::Usage(format!(
            "--plane expects `axis=offset` with axis x, y or z, got `{s}`"
        ))
    };
    let (axis, off) = s.split_once('=').ok_or_else(bad)?;
    let off: f64 = off.trim().parse().map_err(|_| bad())?;
    match axis.trim() {
        "x" => Ok(Plane::X(off)),
        "y" => Ok(Plane::Y(off)),
        "z" => Ok(Plane::Z(off)),
        _ => Err(bad()),
    }
}

fn parse_units(s: &str) -> Result<[Unit; 3], AppError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(AppError::Usage(format!(
            "--units expects three of 1,i,j,k, got `{s}`"
        )));
    }
    let mut units = [Unit::One; 3];
    for (slot, part) in units.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|e| AppError::Usage(format!("--units: {e}")))?;
    }
    Ok(units)
}
