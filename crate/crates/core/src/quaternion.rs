//! Quaternion arithmetic: Hamilton product, norms, polar form, integer
//! powers through the polar form, and rotation by conjugation.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use crate::spherical::PureQuaternion;
use crate::Error;

/// A quaternion `w + x i + y j + z k` over f64 components.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn from_real(a: f64) -> Self {
        Self::new(a, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Euclidean modulus `sqrt(w^2 + x^2 + y^2 + z^2)`.
    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn conjugate(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// The vector part `x i + y j + z k`, dropping the scalar slot.
    #[inline]
    pub fn vector_part(self) -> PureQuaternion {
        PureQuaternion::new(self.x, self.y, self.z)
    }

    /// Polar decomposition `q = |q| (cos phi + p sin phi)` with
    /// `phi` in `[0, pi]` and `p` a unit pure quaternion.
    ///
    /// Real quaternions have no preferred axis; by convention they map to
    /// axis `k` with `phi = 0` for `w >= 0` and `phi = pi` for `w < 0`.
    pub fn to_polar(self) -> PolarForm {
        let modulus = self.norm();
        let v = self.vector_part();
        let vnorm = v.norm();
        if vnorm == 0.0 {
            let angle = if self.w < 0.0 { PI } else { 0.0 };
            return PolarForm {
                modulus,
                angle,
                axis: PureQuaternion::K,
            };
        }
        PolarForm {
            modulus,
            // vnorm >= 0 keeps atan2 in [0, pi]
            angle: vnorm.atan2(self.w),
            axis: v * (1.0 / vnorm),
        }
    }

    /// `q^n` evaluated in polar form: `|q|^n (cos(n phi) + p sin(n phi))`.
    pub fn powu(self, n: u32) -> Self {
        let p = self.to_polar();
        let m = p.modulus.powi(n as i32);
        let (s, c) = (f64::from(n) * p.angle).sin_cos();
        Self::new(m * c, m * s * p.axis.x, m * s * p.axis.y, m * s * p.axis.z)
    }
}

impl From<PureQuaternion> for Quaternion {
    #[inline]
    fn from(p: PureQuaternion) -> Self {
        Self::new(0.0, p.x, p.y, p.z)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.w + rhs.w,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.w - rhs.w,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, q: Self) -> Self {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (q.w, q.x, q.y, q.z);
        Self::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 + c1 * a2 + d1 * b2 - b1 * d2,
            a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2,
        )
    }
}

/// Polar form `modulus * (cos angle + axis * sin angle)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarForm {
    pub modulus: f64,
    /// In `[0, pi]`.
    pub angle: f64,
    /// Unit vector whenever the source had a nonzero vector part.
    pub axis: PureQuaternion,
}

impl PolarForm {
    pub fn to_quaternion(&self) -> Quaternion {
        let (s, c) = self.angle.sin_cos();
        Quaternion::new(
            self.modulus * c,
            self.modulus * s * self.axis.x,
            self.modulus * s * self.axis.y,
            self.modulus * s * self.axis.z,
        )
    }
}

/// Rotates `p` about the vector `axis` through `2 * half_angle`, by
/// conjugation with `r = cos(half_angle) + (axis/|axis|) sin(half_angle)`.
///
/// Conjugation by a unit quaternion is exactly pure in exact arithmetic;
/// the floating-point scalar residue is dropped.
pub fn rotate(
    p: PureQuaternion,
    axis: PureQuaternion,
    half_angle: f64,
) -> Result<PureQuaternion, Error> {
    let n = axis.norm();
    if n == 0.0 {
        return Err(Error::ZeroAxis);
    }
    let (s, c) = half_angle.sin_cos();
    let u = axis * (s / n);
    let r = Quaternion::new(c, u.x, u.y, u.z);
    let out = r * Quaternion::from(p) * r.conjugate();
    debug_assert!(out.w.abs() <= 1e-12 * p.norm().max(f64::MIN_POSITIVE));
    Ok(out.vector_part())
}
