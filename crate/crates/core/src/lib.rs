//! Spherical products of pure quaternions and the 3D generalizations of
//! the Mandelbrot set they induce: the spherical set (IQ Bulb), the
//! power-m family (the Mandelbulb at m = 8), the two-multiplier family
//! (Bulbic set, Goldenbulb) and the principal 3D slices of the
//! quaternionic set (the Metasphere among them).
//!
//! - [`quaternion`]: Hamilton product, polar form, powers, rotation.
//! - [`spherical`]: canonical spherical coordinates and the products.
//! - [`dynamics`]: escape-time engines with their proven escape radii.
//! - [`raster`]: deterministic 2D/3D sampling and radial profiles.
//! - [`formats`]: PGM/PPM/RAW/CSV output.
//! - [`verify`]: seeded numerical checks of the algebraic and dynamical
//!   claims, reported as pass/fail with worst observed errors.

pub mod dynamics;
mod error;
pub mod formats;
pub mod quaternion;
pub mod raster;
pub mod spherical;
pub mod verify;

pub use dynamics::{Engine, EscapeResult, Unit};
pub use error::Error;
pub use quaternion::{PolarForm, Quaternion};
pub use spherical::{PureQuaternion, SphericalTriple};

pub type Result<T> = std::result::Result<T, Error>;
