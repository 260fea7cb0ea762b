//! Plane vectors and affine maps.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A point or vector in the plane. Serializes as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Determinant of the matrix with columns `self`, `other`;
    /// twice the signed area of the triangle they span.
    pub fn wedge(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn dist(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// A 2x2 matrix stored as rows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub rows: [[f64; 2]; 2],
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        rows: [[1.0, 0.0], [0.0, 1.0]],
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 {
            rows: [[a, b], [c, d]],
        }
    }

    pub fn from_cols(c0: Vec2, c1: Vec2) -> Self {
        Mat2::new(c0.x, c1.x, c0.y, c1.y)
    }

    pub fn diag(a: f64, d: f64) -> Self {
        Mat2::new(a, 0.0, 0.0, d)
    }

    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Mat2::new(c, -s, s, c)
    }

    pub fn det(&self) -> f64 {
        self.rows[0][0] * self.rows[1][1] - self.rows[0][1] * self.rows[1][0]
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.rows[0][0] * v.x + self.rows[0][1] * v.y,
            self.rows[1][0] * v.x + self.rows[1][1] * v.y,
        )
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(
            self.rows[0][0],
            self.rows[1][0],
            self.rows[0][1],
            self.rows[1][1],
        )
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let a = &self.rows;
        let b = &other.rows;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        Mat2::new(
            self.rows[0][0] * s,
            self.rows[0][1] * s,
            self.rows[1][0] * s,
            self.rows[1][1] * s,
        )
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::DegenerateBasis);
        }
        Ok(Mat2::new(
            self.rows[1][1] / det,
            -self.rows[0][1] / det,
            -self.rows[1][0] / det,
            self.rows[0][0] / det,
        ))
    }

    /// Spectral norm (largest singular value).
    pub fn operator_norm(&self) -> f64 {
        let g = self.transpose().mul(self);
        let tr = g.rows[0][0] + g.rows[1][1];
        let det = g.det();
        let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
        (tr / 2.0 + disc).max(0.0).sqrt()
    }

    /// Symmetric positive definite square root of a symmetric
    /// positive definite matrix.
    pub fn sym_sqrt(&self) -> Result<Mat2> {
        let a = self.rows[0][0];
        let b = self.rows[0][1];
        let c = self.rows[1][1];
        let det = self.det();
        if (self.rows[1][0] - b).abs() > 1e-12 * self.operator_norm() || det <= 0.0 || a + c <= 0.0
        {
            return Err(Error::NotPositiveDefinite);
        }
        let s = det.sqrt();
        let t = (a + c + 2.0 * s).sqrt();
        Ok(Mat2::new((a + s) / t, b / t, b / t, (c + s) / t))
    }
}

/// An invertible affine map `v -> M v + b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap2 {
    pub linear: Mat2,
    pub translation: Vec2,
}

impl AffineMap2 {
    pub fn new(linear: Mat2, translation: Vec2) -> Result<Self> {
        if linear.det() == 0.0 || !linear.det().is_finite() {
            return Err(Error::DegenerateBasis);
        }
        Ok(AffineMap2 {
            linear,
            translation,
        })
    }

    pub fn identity() -> Self {
        AffineMap2 {
            linear: Mat2::IDENTITY,
            translation: Vec2::ZERO,
        }
    }

    pub fn det(&self) -> f64 {
        self.linear.det()
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        self.linear.apply(v) + self.translation
    }

    pub fn inverse(&self) -> Result<AffineMap2> {
        let inv = self.linear.inverse()?;
        Ok(AffineMap2 {
            linear: inv,
            translation: -inv.apply(self.translation),
        })
    }
}

/// Signed area of a triangle via the shoelace formula.
pub fn signed_area(p0: Vec2, p1: Vec2, p2: Vec2) -> f64 {
    0.5 * (p1 - p0).wedge(p2 - p0)
}

/// Area of a triangle via the shoelace formula.
pub fn triangle_area(p0: Vec2, p1: Vec2, p2: Vec2) -> f64 {
    signed_area(p0, p1, p2).abs()
}

/// Circumcenter and circumradius of three non-collinear points.
pub fn circumcircle(p0: Vec2, p1: Vec2, p2: Vec2) -> Result<(Vec2, f64)> {
    let d = 2.0 * (p1 - p0).wedge(p2 - p0);
    if d.abs() < 1e-300 {
        return Err(Error::CollinearPoints);
    }
    let u = p1 - p0;
    let v = p2 - p0;
    let u2 = u.norm2();
    let v2 = v.norm2();
    let cx = (v.y * u2 - u.y * v2) / d;
    let cy = (u.x * v2 - v.x * u2) / d;
    let center = p0 + Vec2::new(cx, cy);
    Ok((center, center.dist(p0)))
}
