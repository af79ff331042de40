//! Pure quaternions in canonical spherical coordinates and the three
//! products defined on them: the spherical product, the spherical power,
//! and the two-multiplier variant.
//!
//! The canonical representation `(rho, theta, phi)` has `rho >= 0`,
//! `theta` in `[0, 2pi)`, `phi` in `[0, pi]`, with `theta = phi = 0` at
//! the origin and `theta = 0` at both poles. Every product recomputes
//! the canonical triple of its operands from Cartesian coordinates, then
//! evaluates the defining formula with raw angle sums; the trigonometric
//! functions resolve the wrap, and the Cartesian result is the source of
//! truth. Carrying non-canonical angles across operations would destroy
//! the algebra's structure (the non-associativity counterexample only
//! reproduces under re-canonicalization).

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

/// A quaternion with zero scalar part: `x i + y j + z k`, identified
/// with a point of 3D space.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PureQuaternion {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PureQuaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);
    pub const I: Self = Self::new(1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 1.0, 0.0);
    /// Identity element of the spherical product.
    pub const K: Self = Self::new(0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn dot(self, rhs: Self) -> f64 {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    #[inline]
    pub fn cross(self, rhs: Self) -> Self {
        Self::new(
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        )
    }

    /// Canonical spherical coordinates of this point.
    #[inline]
    pub fn to_spherical(self) -> SphericalTriple {
        SphericalTriple::from_cartesian(self)
    }

    /// Spherical product: multiplies the radii and adds both angles of
    /// the canonical representations.
    ///
    /// Commutative with identity `k`; deliberately not associative.
    /// `|q1 x_s q2| = |q1| |q2|`.
    pub fn sprod(self, rhs: Self) -> Self {
        let a = self.to_spherical();
        let b = rhs.to_spherical();
        SphericalTriple {
            rho: a.rho * b.rho,
            theta: a.theta + b.theta,
            phi: a.phi + b.phi,
        }
        .to_cartesian()
    }

    /// Spherical power: radius to the n-th power, both angles scaled
    /// by n. `spow(q, 0)` is the identity `k`; `|spow(q, n)| = |q|^n`.
    pub fn spow(self, n: u32) -> Self {
        let s = self.to_spherical();
        let nf = f64::from(n);
        SphericalTriple {
            rho: s.rho.powi(n as i32),
            theta: nf * s.theta,
            phi: nf * s.phi,
        }
        .to_cartesian()
    }

    /// Squared-radius product with independent angle multipliers:
    /// `a` scales the polar angle phi, `b` scales the azimuth theta.
    /// `(a, b) = (2, 2)` coincides with `sprod(q, q)`;
    /// `|result| = |q|^2` for every `(a, b)`.
    pub fn sprod_ab(self, a: f64, b: f64) -> Self {
        let s = self.to_spherical();
        SphericalTriple {
            rho: s.rho * s.rho,
            theta: b * s.theta,
            phi: a * s.phi,
        }
        .to_cartesian()
    }

    /// Inverse under the spherical product, which exists only for points
    /// on the k axis: the inverse of `c k` is `k / c`. Points off the
    /// axis (beyond a 1e-14 component tolerance) and zero return `None`.
    pub fn spherical_inverse(self) -> Option<Self> {
        const AXIS_TOL: f64 = 1e-14;
        if self.x.abs() <= AXIS_TOL && self.y.abs() <= AXIS_TOL && self.z != 0.0 {
            Some(Self::new(0.0, 0.0, 1.0 / self.z))
        } else {
            None
        }
    }
}

impl Add for PureQuaternion {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for PureQuaternion {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for PureQuaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for PureQuaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Spherical coordinates `(rho, theta, phi)` of a pure quaternion.
///
/// Produced by [`SphericalTriple::from_cartesian`] in canonical form;
/// [`SphericalTriple::to_cartesian`] also accepts non-canonical angles
/// (raw sums and multiples), which the trigonometric functions wrap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalTriple {
    /// Distance from the origin, `>= 0`.
    pub rho: f64,
    /// Azimuth from the positive i axis in the ij plane, canonical in
    /// `[0, 2pi)`; fixed to 0 at the origin and at both poles.
    pub theta: f64,
    /// Angle from the positive k axis, canonical in `[0, pi]`.
    pub phi: f64,
}

impl SphericalTriple {
    /// Canonical triple of a Cartesian point.
    ///
    /// Pole detection is exact (`x == 0 && y == 0`), with no epsilon
    /// snapping of nearby points: snapping would make the escape-time
    /// membership functions discontinuous. The arccos argument is
    /// clamped to `[-1, 1]` to absorb rounding when `|z|` is close
    /// to `rho`.
    pub fn from_cartesian(q: PureQuaternion) -> Self {
        let rho = q.norm();
        if rho == 0.0 {
            return Self {
                rho: 0.0,
                theta: 0.0,
                phi: 0.0,
            };
        }
        if q.x == 0.0 && q.y == 0.0 {
            let phi = if q.z > 0.0 { 0.0 } else { PI };
            return Self {
                rho,
                theta: 0.0,
                phi,
            };
        }
        let mut theta = q.y.atan2(q.x);
        if theta < 0.0 {
            theta += TAU;
        }
        let phi = (q.z / rho).clamp(-1.0, 1.0).acos();
        Self { rho, theta, phi }
    }

    /// `rho (i sin phi cos theta + j sin phi sin theta + k cos phi)`.
    pub fn to_cartesian(&self) -> PureQuaternion {
        let (sp, cp) = self.phi.sin_cos();
        let (st, ct) = self.theta.sin_cos();
        PureQuaternion::new(self.rho * sp * ct, self.rho * sp * st, self.rho * cp)
    }
}
