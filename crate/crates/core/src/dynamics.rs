//! Escape-time iteration for every set family, with the proven escape
//! radii: 2 for the quadratic families and `2^(1/(m-1))` for the power-m
//! family. Orbits start at 0, iterate `q <- step(q) + c`, and escape at
//! the first iterate whose norm strictly exceeds the radius, so boundary
//! orbits (norm exactly equal to the radius) remain members.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::quaternion::Quaternion;
use crate::spherical::PureQuaternion;
use crate::Error;

/// The golden ratio, used by the Goldenbulb family.
pub const GOLDEN_RATIO: f64 = 1.618033988749894848204586834365638118;

/// One of the quaternion basis units spanning a 3D slice of H.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    One,
    I,
    J,
    K,
}

impl Unit {
    pub fn as_quaternion(self) -> Quaternion {
        match self {
            Unit::One => Quaternion::ONE,
            Unit::I => Quaternion::I,
            Unit::J => Quaternion::J,
            Unit::K => Quaternion::K,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::One => "1",
            Unit::I => "i",
            Unit::J => "j",
            Unit::K => "k",
        })
    }
}

impl FromStr for Unit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "1" => Ok(Unit::One),
            "i" => Ok(Unit::I),
            "j" => Ok(Unit::J),
            "k" => Ok(Unit::K),
            other => Err(format!("unknown unit `{other}` (expected 1, i, j or k)")),
        }
    }
}

/// An escape-time engine: picks the iterated map and the embedding of a
/// 3D sample point into its parameter space.
///
/// Sample points `[x, y, z]` map to parameters as follows: `Complex`
/// reads `x + y i` (constant along z); `QuatSlice` with units
/// `(u1, u2, u3)` reads `x u1 + y u2 + z u3`; the spherical families
/// read the pure quaternion `x i + y j + z k`.
#[derive(Clone, Debug, PartialEq)]
pub enum Engine {
    /// `z <- z^2 + c` over the complex plane.
    Complex,
    /// `q <- q^2 + c` (Hamilton square) over a principal 3D slice of H.
    QuatSlice { units: [Unit; 3] },
    /// `q <- sp_2(q) + c` over pure quaternions.
    Spherical,
    /// `q <- sp_m(q) + c`, m >= 2. m = 8 is the classical Mandelbulb.
    SphericalPower { m: u32 },
    /// `q <- (q x_s^(a,b) q) + c`. (1, 2) is the Bulbic set; (2, 1)
    /// matches the slice H(1,i,j); (GOLDEN_RATIO, n) is the Goldenbulb.
    SphericalAb { a: f64, b: f64 },
}

impl Engine {
    /// Quaternionic engine over a validated principal slice.
    pub fn quat_slice(units: [Unit; 3]) -> Result<Self, Error> {
        if units[0] == units[1] || units[0] == units[2] || units[1] == units[2] {
            return Err(Error::DuplicateUnits(units[0], units[1], units[2]));
        }
        Ok(Engine::QuatSlice { units })
    }

    /// Power-m engine, validated m >= 2.
    pub fn spherical_power(m: u32) -> Result<Self, Error> {
        if m < 2 {
            return Err(Error::PowerTooSmall(m));
        }
        Ok(Engine::SphericalPower { m })
    }

    /// The Goldenbulb for power n: angle multipliers (golden ratio, n).
    pub fn goldenbulb(n: f64) -> Self {
        Engine::SphericalAb {
            a: GOLDEN_RATIO,
            b: n,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        match *self {
            Engine::QuatSlice { units } => {
                Self::quat_slice(units)?;
            }
            Engine::SphericalPower { m } => {
                Self::spherical_power(m)?;
            }
            _ => {}
        }
        Ok(())
    }

    /// The proven escape radius: any orbit iterate beyond it diverges.
    pub fn escape_radius(&self) -> f64 {
        match *self {
            Engine::SphericalPower { m } => power_escape_radius(m),
            _ => 2.0,
        }
    }

    /// Runs the orbit for the parameter at sample point `p`.
    pub fn escape_at(&self, p: [f64; 3], max_iter: u32) -> EscapeResult {
        match *self {
            Engine::Complex => iterate_complex(Complex64::new(p[0], p[1]), max_iter),
            Engine::QuatSlice { units } => {
                iterate_quaternionic(combine_units(p[0], p[1], p[2], units), max_iter)
            }
            Engine::Spherical => iterate_spherical(PureQuaternion::new(p[0], p[1], p[2]), max_iter),
            Engine::SphericalPower { m } => iterate_power_unchecked(
                PureQuaternion::new(p[0], p[1], p[2]),
                m,
                power_escape_radius(m),
                max_iter,
            ),
            Engine::SphericalAb { a, b } => {
                iterate_spherical_ab(PureQuaternion::new(p[0], p[1], p[2]), a, b, max_iter)
            }
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::Complex => write!(f, "complex"),
            Engine::QuatSlice { units } => {
                write!(f, "quat-slice({},{},{})", units[0], units[1], units[2])
            }
            Engine::Spherical => write!(f, "spherical"),
            Engine::SphericalPower { m } => write!(f, "spherical-m({m})"),
            Engine::SphericalAb { a, b } => write!(f, "spherical-ab({a},{b})"),
        }
    }
}

fn power_escape_radius(m: u32) -> f64 {
    2f64.powf(1.0 / f64::from(m - 1))
}

/// Outcome of one escape-time orbit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EscapeResult {
    /// Whether some iterate's norm strictly exceeded the escape radius.
    pub escaped: bool,
    /// First iterate index with norm beyond the radius, or `max_iter`.
    pub iterations: u32,
    /// Norm of the last computed iterate.
    pub final_norm: f64,
}

pub fn iterate_complex(c: Complex64, max_iter: u32) -> EscapeResult {
    let mut z = Complex64::new(0.0, 0.0);
    let mut norm = 0.0;
    for n in 1..=max_iter {
        z = z * z + c;
        norm = z.norm_sqr().sqrt();
        if norm > 2.0 {
            return EscapeResult {
                escaped: true,
                iterations: n,
                final_norm: norm,
            };
        }
    }
    EscapeResult {
        escaped: false,
        iterations: max_iter,
        final_norm: norm,
    }
}

pub fn iterate_quaternionic(c: Quaternion, max_iter: u32) -> EscapeResult {
    let mut q = Quaternion::ZERO;
    let mut norm = 0.0;
    for n in 1..=max_iter {
        q = q * q + c;
        norm = q.norm();
        if norm > 2.0 {
            return EscapeResult {
                escaped: true,
                iterations: n,
                final_norm: norm,
            };
        }
    }
    EscapeResult {
        escaped: false,
        iterations: max_iter,
        final_norm: norm,
    }
}

/// Closed-form membership for the quaternionic set: `c = q0 + v` is a
/// member iff the complex parameter `q0 + |v| i` has a bounded orbit.
pub fn quat_membership_oracle(c: Quaternion, max_iter: u32) -> bool {
    let rho = c.vector_part().norm();
    !iterate_complex(Complex64::new(c.w, rho), max_iter).escaped
}

pub fn iterate_spherical(c: PureQuaternion, max_iter: u32) -> EscapeResult {
    iterate_power_unchecked(c, 2, 2.0, max_iter)
}

pub fn iterate_spherical_power(
    c: PureQuaternion,
    m: u32,
    max_iter: u32,
) -> Result<EscapeResult, Error> {
    if m < 2 {
        return Err(Error::PowerTooSmall(m));
    }
    Ok(iterate_power_unchecked(
        c,
        m,
        power_escape_radius(m),
        max_iter,
    ))
}

fn iterate_power_unchecked(c: PureQuaternion, m: u32, radius: f64, max_iter: u32) -> EscapeResult {
    let mut q = PureQuaternion::ZERO;
    let mut norm = 0.0;
    for n in 1..=max_iter {
        q = q.spow(m) + c;
        norm = q.norm();
        if norm > radius {
            return EscapeResult {
                escaped: true,
                iterations: n,
                final_norm: norm,
            };
        }
    }
    EscapeResult {
        escaped: false,
        iterations: max_iter,
        final_norm: norm,
    }
}

/// Escape radius 2 carries over from the spherical case: the divergence
/// argument only uses `|q x_s^(a,b) q| = |q|^2`, which holds for every
/// pair of angle multipliers.
pub fn iterate_spherical_ab(c: PureQuaternion, a: f64, b: f64, max_iter: u32) -> EscapeResult {
    let mut q = PureQuaternion::ZERO;
    let mut norm = 0.0;
    for n in 1..=max_iter {
        q = q.sprod_ab(a, b) + c;
        norm = q.norm();
        if norm > 2.0 {
            return EscapeResult {
                escaped: true,
                iterations: n,
                final_norm: norm,
            };
        }
    }
    EscapeResult {
        escaped: false,
        iterations: max_iter,
        final_norm: norm,
    }
}

/// Embeds `(u, v, w)` into H along three pairwise distinct basis units.
pub fn slice_point_to_quaternion(
    u: f64,
    v: f64,
    w: f64,
    units: [Unit; 3],
) -> Result<Quaternion, Error> {
    if units[0] == units[1] || units[0] == units[2] || units[1] == units[2] {
        return Err(Error::DuplicateUnits(units[0], units[1], units[2]));
    }
    Ok(combine_units(u, v, w, units))
}

fn combine_units(u: f64, v: f64, w: f64, units: [Unit; 3]) -> Quaternion {
    units[0].as_quaternion() * u + units[1].as_quaternion() * v + units[2].as_quaternion() * w
}
