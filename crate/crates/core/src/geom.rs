//! Points, directions and open rays in the plane.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Unit vector pointing at `theta` radians.
    pub fn unit(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Point { x: c, y: s }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Polar angle in `(-π, π]`.
    pub fn atan2(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn normalized(self) -> Point {
        let n = self.norm();
        Point::new(self.x / n, self.y / n)
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn rotate(self, phi: f64) -> Point {
        let (s, c) = phi.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A direction on the unit circle, stored in radians in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    /// Wraps any finite value into `[0, 2π)`.
    pub fn new(theta: f64) -> Result<Self> {
        normalize_angle(theta)
    }

    /// Wrap without the finiteness check; for values already known to be finite.
    pub(crate) fn wrap(theta: f64) -> Self {
        let mut t = theta.rem_euclid(TAU);
        // rem_euclid can round up to exactly TAU for tiny negative inputs
        if t >= TAU {
            t = 0.0;
        }
        Angle(t)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    pub fn from_degrees(deg: f64) -> Result<Self> {
        normalize_angle(deg.to_radians())
    }

    pub fn unit(self) -> Point {
        Point::unit(self.0)
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 2π)`.
    pub fn ccw_to(self, other: Angle) -> f64 {
        Angle::wrap(other.0 - self.0).0
    }

    /// Shortest unsigned angular distance, in `[0, π]`.
    pub fn distance(self, other: Angle) -> f64 {
        let d = self.ccw_to(other);
        d.min(TAU - d)
    }

    pub fn rotated(self, phi: f64) -> Angle {
        Angle::wrap(self.0 + phi)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}°", self.degrees())
    }
}

pub fn normalize_angle(t: f64) -> Result<Angle> {
    if !t.is_finite() {
        return Err(Error::NonFinite(t));
    }
    Ok(Angle::wrap(t))
}

/// Open ray: `{origin + t·(cos θ, sin θ) : t > 0}`. The origin is not a member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: Point,
    pub direction: Angle,
}

impl Ray {
    pub fn new(origin: Point, direction: Angle) -> Self {
        Ray { origin, direction }
    }

    pub fn from_radians(origin: Point, theta: f64) -> Self {
        Ray::new(origin, Angle::wrap(theta))
    }

    pub fn dir(&self) -> Point {
        self.direction.unit()
    }

    pub fn at(&self, t: f64) -> Point {
        self.origin + self.dir() * t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_angle(TAU).unwrap().radians(), 0.0);
        assert!((normalize_angle(-PI / 2.0).unwrap().radians() - 1.5 * PI).abs() < 1e-15);
        assert!((normalize_angle(5.0 * PI).unwrap().radians() - PI).abs() < 1e-14);
    }

    #[test]
    fn normalize_rejects_non_finite() {
        assert!(normalize_angle(f64::NAN).is_err());
        assert!(normalize_angle(f64::INFINITY).is_err());
    }

    #[test]
    fn tiny_negative_wraps_into_range() {
        let a = normalize_angle(-1e-300).unwrap();
        assert!(a.radians() >= 0.0 && a.radians() < TAU);
    }

    #[test]
    fn ccw_distance() {
        let a = Angle::wrap(0.1);
        let b = Angle::wrap(-0.1);
        assert!((a.ccw_to(b) - (TAU - 0.2)).abs() < 1e-12);
        assert!((a.distance(b) - 0.2).abs() < 1e-12);
    }
}
