//! Positively curved plane arcs and their geometric functionals.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{AffineMap2, Mat2, Vec2};
use crate::quad::{adaptive_simpson, golden_min, DEFAULT_REL_TOL};

pub type Evaluator = Arc<dyn Fn(f64) -> Vec2 + Send + Sync>;

const CONVEXITY_SAMPLES: usize = 1024;
const EXTREMUM_SCAN: usize = 512;

/// A positively curved plane arc.
#[derive(Clone)]
pub enum Curve {
    /// Counterclockwise circular arc, `theta` in radians with
    /// `0 < theta.1 - theta.0 <= 2 pi`.
    CircleArc {
        center: Vec2,
        radius: f64,
        theta: (f64, f64),
    },
    /// Arc of the ellipse `(p - center)^T Q (p - center) = 1`, parametrized
    /// as `center + S (cos t, sin t)` where `S = sqrt(Q)^{-1}`.
    EllipseArc {
        center: Vec2,
        q: Mat2,
        theta: (f64, f64),
        s: Mat2,
    },
    /// The arc `t -> v0 + t v1 + t(t+1)/2 v2` with `v1 ^ v2 > 0`.
    ParabolaArc {
        v0: Vec2,
        v1: Vec2,
        v2: Vec2,
        t: (f64, f64),
    },
    /// General C2 arc given by pure evaluators for the point and its first
    /// two derivatives.
    ParamC2 {
        point: Evaluator,
        deriv: Evaluator,
        deriv2: Evaluator,
        t: (f64, f64),
        closed: bool,
    },
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::CircleArc {
                center,
                radius,
                theta,
            } => f
                .debug_struct("CircleArc")
                .field("center", center)
                .field("radius", radius)
                .field("theta", theta)
                .finish(),
            Curve::EllipseArc {
                center, q, theta, ..
            } => f
                .debug_struct("EllipseArc")
                .field("center", center)
                .field("q", q)
                .field("theta", theta)
                .finish(),
            Curve::ParabolaArc { v0, v1, v2, t } => f
                .debug_struct("ParabolaArc")
                .field("v0", v0)
                .field("v1", v1)
                .field("v2", v2)
                .field("t", t)
                .finish(),
            Curve::ParamC2 { t, closed, .. } => f
                .debug_struct("ParamC2")
                .field("t", t)
                .field("closed", closed)
                .finish(),
        }
    }
}

/// Serializable curve descriptor, the JSON wire format.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveSpec {
    CircleArc {
        center: Vec2,
        #[serde(rename = "R")]
        radius: f64,
        theta: (f64, f64),
    },
    EllipseArc {
        center: Vec2,
        #[serde(rename = "Q")]
        q: [[f64; 2]; 2],
        theta: (f64, f64),
    },
    ParabolaArc {
        v0: Vec2,
        v1: Vec2,
        v2: Vec2,
        t: (f64, f64),
    },
}

impl CurveSpec {
    pub fn build(&self) -> Result<Curve> {
        match *self {
            CurveSpec::CircleArc {
                center,
                radius,
                theta,
            } => Curve::circle_arc(center, radius, theta.0, theta.1),
            CurveSpec::EllipseArc { center, q, theta } => Curve::ellipse_arc(
                center,
                Mat2 { rows: q },
                theta.0,
                theta.1,
            ),
            CurveSpec::ParabolaArc { v0, v1, v2, t } => Curve::parabola_arc(v0, v1, v2, t.0, t.1),
        }
    }
}

/// Geometric functionals of a curve.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CurveStats {
    pub length: f64,
    pub total_curvature: f64,
    /// Minimum radius of curvature.
    pub r_min: f64,
    /// Maximum radius of curvature.
    pub r_max: f64,
    pub affine_arclength: f64,
}

impl Curve {
    pub fn circle_arc(center: Vec2, radius: f64, theta0: f64, theta1: f64) -> Result<Self> {
        let span = theta1 - theta0;
        if !(radius > 0.0) || !(span > 0.0) || span > TAU + 1e-12 {
            return Err(Error::ConfigInvalid(
                "circle arc needs R > 0 and 0 < span <= 2 pi".into(),
            ));
        }
        Ok(Curve::CircleArc {
            center,
            radius,
            theta: (theta0, theta1),
        })
    }

    pub fn full_circle(center: Vec2, radius: f64) -> Result<Self> {
        Curve::circle_arc(center, radius, 0.0, TAU)
    }

    pub fn ellipse_arc(center: Vec2, q: Mat2, theta0: f64, theta1: f64) -> Result<Self> {
        let span = theta1 - theta0;
        if !(span > 0.0) || span > TAU + 1e-12 {
            return Err(Error::ConfigInvalid("ellipse arc span out of range".into()));
        }
        if !(q.det() > 0.0) || !(q.rows[0][0] + q.rows[1][1] > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        let t = q.sym_sqrt()?;
        let s = t.inverse()?;
        Ok(Curve::EllipseArc {
            center,
            q,
            theta: (theta0, theta1),
            s,
        })
    }

    pub fn full_ellipse(center: Vec2, q: Mat2) -> Result<Self> {
        Curve::ellipse_arc(center, q, 0.0, TAU)
    }

    /// Flips `v2` if needed so the wedge is positive.
    pub fn parabola_arc(v0: Vec2, v1: Vec2, v2: Vec2, t0: f64, t1: f64) -> Result<Self> {
        if !(t1 > t0) {
            return Err(Error::ConfigInvalid("empty parameter interval".into()));
        }
        let w = v1.wedge(v2);
        if w.abs() <= 1e-12 * v1.norm().max(v2.norm()).powi(2) {
            return Err(Error::DegenerateBasis);
        }
        let v2 = if w > 0.0 { v2 } else { -v2 };
        Ok(Curve::ParabolaArc {
            v0,
            v1,
            v2,
            t: (t0, t1),
        })
    }

    /// General parametric arc. Orientation is flipped when the wedge
    /// `gamma' ^ gamma''` is negative throughout; mixed signs are rejected.
    pub fn param_c2(
        point: Evaluator,
        deriv: Evaluator,
        deriv2: Evaluator,
        t0: f64,
        t1: f64,
        closed: bool,
    ) -> Result<Self> {
        if !(t1 > t0) {
            return Err(Error::ConfigInvalid("empty parameter interval".into()));
        }
        let mut pos = 0usize;
        let mut neg = 0usize;
        for i in 0..=CONVEXITY_SAMPLES {
            let t = t0 + (t1 - t0) * i as f64 / CONVEXITY_SAMPLES as f64;
            let d = deriv(t);
            if !(d.norm() > 0.0) {
                return Err(Error::ConfigInvalid("vanishing first derivative".into()));
            }
            let w = d.wedge(deriv2(t));
            if w > 0.0 {
                pos += 1;
            } else if w < 0.0 {
                neg += 1;
            } else {
                return Err(Error::MixedCurvatureSign);
            }
        }
        if pos > 0 && neg > 0 {
            return Err(Error::MixedCurvatureSign);
        }
        let (point, deriv, deriv2) = if neg > 0 {
            let s = t0 + t1;
            let p = point.clone();
            let d = deriv.clone();
            let d2 = deriv2.clone();
            (
                Arc::new(move |t: f64| p(s - t)) as Evaluator,
                Arc::new(move |t: f64| -d(s - t)) as Evaluator,
                Arc::new(move |t: f64| d2(s - t)) as Evaluator,
            )
        } else {
            (point, deriv, deriv2)
        };
        if closed {
            let gap = (point(t0) - point(t1)).norm();
            let cross = deriv(t0).wedge(deriv(t1)).abs();
            let scale = deriv(t0).norm() * deriv(t1).norm();
            if gap > 1e-8 * (1.0 + point(t0).norm()) || cross > 1e-8 * scale {
                return Err(Error::NotClosed);
            }
        }
        Ok(Curve::ParamC2 {
            point,
            deriv,
            deriv2,
            t: (t0, t1),
            closed,
        })
    }

    pub fn domain(&self) -> (f64, f64) {
        match self {
            Curve::CircleArc { theta, .. } | Curve::EllipseArc { theta, .. } => *theta,
            Curve::ParabolaArc { t, .. } | Curve::ParamC2 { t, .. } => *t,
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Curve::CircleArc { theta, .. } | Curve::EllipseArc { theta, .. } => {
                (theta.1 - theta.0 - TAU).abs() < 1e-12
            }
            Curve::ParabolaArc { .. } => false,
            Curve::ParamC2 { closed, .. } => *closed,
        }
    }

    pub fn point(&self, t: f64) -> Vec2 {
        match self {
            Curve::CircleArc { center, radius, .. } => {
                *center + Vec2::new(t.cos(), t.sin()) * *radius
            }
            Curve::EllipseArc { center, s, .. } => *center + s.apply(Vec2::new(t.cos(), t.sin())),
            Curve::ParabolaArc { v0, v1, v2, .. } => {
                *v0 + *v1 * t + *v2 * (t * (t + 1.0) / 2.0)
            }
            Curve::ParamC2 { point, .. } => point(t),
        }
    }

    pub fn deriv(&self, t: f64) -> Vec2 {
        match self {
            Curve::CircleArc { radius, .. } => Vec2::new(-t.sin(), t.cos()) * *radius,
            Curve::EllipseArc { s, .. } => s.apply(Vec2::new(-t.sin(), t.cos())),
            Curve::ParabolaArc { v1, v2, .. } => *v1 + *v2 * (t + 0.5),
            Curve::ParamC2 { deriv, .. } => deriv(t),
        }
    }

    pub fn deriv2(&self, t: f64) -> Vec2 {
        match self {
            Curve::CircleArc { radius, .. } => Vec2::new(-t.cos(), -t.sin()) * *radius,
            Curve::EllipseArc { s, .. } => s.apply(Vec2::new(-t.cos(), -t.sin())),
            Curve::ParabolaArc { v2, .. } => *v2,
            Curve::ParamC2 { deriv2, .. } => deriv2(t),
        }
    }

    /// `kappa(t) = (gamma' ^ gamma'') / |gamma'|^3`.
    pub fn curvature_at(&self, t: f64) -> Result<f64> {
        let (a, b) = self.domain();
        if t < a - 1e-12 || t > b + 1e-12 {
            return Err(Error::OutOfDomain);
        }
        let d = self.deriv(t);
        Ok(d.wedge(self.deriv2(t)) / d.norm().powi(3))
    }

    /// Radius of curvature `1/kappa`.
    pub fn radius_at(&self, t: f64) -> Result<f64> {
        Ok(1.0 / self.curvature_at(t)?)
    }

    pub fn spec(&self) -> Option<CurveSpec> {
        match self {
            Curve::CircleArc {
                center,
                radius,
                theta,
            } => Some(CurveSpec::CircleArc {
                center: *center,
                radius: *radius,
                theta: *theta,
            }),
            Curve::EllipseArc {
                center, q, theta, ..
            } => Some(CurveSpec::EllipseArc {
                center: *center,
                q: q.rows,
                theta: *theta,
            }),
            Curve::ParabolaArc { v0, v1, v2, t } => Some(CurveSpec::ParabolaArc {
                v0: *v0,
                v1: *v1,
                v2: *v2,
                t: *t,
            }),
            Curve::ParamC2 { .. } => None,
        }
    }

    /// Length, total curvature, affine arclength by adaptive quadrature;
    /// radius-of-curvature extremes by a 512-point scan with golden-section
    /// refinement.
    pub fn stats(&self, rel_tol: f64) -> Result<CurveStats> {
        let (a, b) = self.domain();
        let length = adaptive_simpson(|t| self.deriv(t).norm(), a, b, rel_tol)?;
        let total_curvature = adaptive_simpson(
            |t| {
                let d = self.deriv(t);
                d.wedge(self.deriv2(t)) / d.norm2()
            },
            a,
            b,
            rel_tol,
        )?;
        let affine_arclength = adaptive_simpson(
            |t| self.deriv(t).wedge(self.deriv2(t)).max(0.0).cbrt(),
            a,
            b,
            rel_tol,
        )?;
        let (r_min, r_max) = self.radius_extremes();
        Ok(CurveStats {
            length,
            total_curvature,
            r_min,
            r_max,
            affine_arclength,
        })
    }

    pub fn default_stats(&self) -> Result<CurveStats> {
        self.stats(DEFAULT_REL_TOL)
    }

    fn radius_extremes(&self) -> (f64, f64) {
        if let Curve::CircleArc { radius, .. } = self {
            return (*radius, *radius);
        }
        let (a, b) = self.domain();
        let rho = |t: f64| {
            let d = self.deriv(t);
            d.norm().powi(3) / d.wedge(self.deriv2(t))
        };
        let n = EXTREMUM_SCAN;
        let h = (b - a) / n as f64;
        let samples: Vec<f64> = (0..=n).map(|i| rho(a + i as f64 * h)).collect();
        let width = 1e-10 * (b - a);
        let mut r_min = f64::INFINITY;
        let mut r_max = f64::NEG_INFINITY;
        for i in 0..=n {
            r_min = r_min.min(samples[i]);
            r_max = r_max.max(samples[i]);
        }
        for i in 1..n {
            let t_lo = a + (i - 1) as f64 * h;
            let t_hi = a + (i + 1) as f64 * h;
            if samples[i] <= samples[i - 1] && samples[i] <= samples[i + 1] {
                let (_, v) = golden_min(&rho, t_lo, t_hi, width);
                r_min = r_min.min(v);
            }
            if samples[i] >= samples[i - 1] && samples[i] >= samples[i + 1] {
                let (_, v) = golden_min(|t| -rho(t), t_lo, t_hi, width);
                r_max = r_max.max(-v);
            }
        }
        (r_min, r_max)
    }

    /// Axis-aligned bounding box: derivative sign changes located by
    /// bisection plus the endpoints.
    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let (a, b) = self.domain();
        let n = 1024;
        let h = (b - a) / n as f64;
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut take = |p: Vec2| {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        };
        take(self.point(a));
        take(self.point(b));
        let mut prev = self.deriv(a);
        for i in 1..=n {
            let t = a + i as f64 * h;
            let d = self.deriv(t);
            for axis in 0..2 {
                let (pa, pb) = if axis == 0 { (prev.x, d.x) } else { (prev.y, d.y) };
                if pa == 0.0 || pa * pb < 0.0 {
                    let f = |t: f64| {
                        let d = self.deriv(t);
                        if axis == 0 {
                            d.x
                        } else {
                            d.y
                        }
                    };
                    let mut x0 = t - h;
                    let mut x1 = t;
                    for _ in 0..64 {
                        let m = 0.5 * (x0 + x1);
                        if f(x0) * f(m) <= 0.0 {
                            x1 = m;
                        } else {
                            x0 = m;
                        }
                    }
                    take(self.point(0.5 * (x0 + x1)));
                }
            }
            take(self.point(t));
            prev = d;
        }
        (lo, hi)
    }

    /// Diagonal of the bounding box; used to scale tolerances.
    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }
}

/// Affine image of a curve; circle and ellipse arcs stay ellipse arcs
/// (a circle with a similarity stays a circle), parabola arcs stay
/// parabola arcs. For `det < 0` the parametrization is reversed to
/// restore positive curvature.
pub fn apply_affine_to_curve(phi: &AffineMap2, curve: &Curve) -> Result<Curve> {
    let det = phi.det();
    if det == 0.0 || !det.is_finite() {
        return Err(Error::DegenerateBasis);
    }
    let m = phi.linear;
    match curve {
        Curve::CircleArc {
            center,
            radius,
            theta,
        } => conic_image(phi, *center, Mat2::IDENTITY.scale(1.0 / (radius * radius)), *theta),
        Curve::EllipseArc {
            center, q, theta, ..
        } => conic_image(phi, *center, *q, *theta),
        Curve::ParabolaArc { v0, v1, v2, t } => {
            let w0 = phi.apply(*v0);
            let w1 = m.apply(*v1);
            let w2 = m.apply(*v2);
            if w1.wedge(w2) > 0.0 {
                Curve::parabola_arc(w0, w1, w2, t.0, t.1)
            } else {
                // Reversed parametrization of the same point set, written
                // back in canonical form: c(s - t) with s = t0 + t1.
                let s = t.0 + t.1;
                let r1 = -w1 - w2 * (s + 1.0);
                let r0 = w0 + w1 * s + w2 * (s * (s + 1.0) / 2.0);
                Curve::parabola_arc(r0, r1, w2, t.0, t.1)
            }
        }
        Curve::ParamC2 {
            point,
            deriv,
            deriv2,
            t,
            closed,
        } => {
            let phi = *phi;
            let p = point.clone();
            let d = deriv.clone();
            let d2 = deriv2.clone();
            let lin = m;
            Curve::param_c2(
                Arc::new(move |t| phi.apply(p(t))),
                Arc::new(move |t| lin.apply(d(t))),
                Arc::new(move |t| lin.apply(d2(t))),
                t.0,
                t.1,
                *closed,
            )
        }
    }
}

/// Image of an ellipse arc (given by center and form `Q`) under an
/// affine map, as an ellipse arc in canonical parametrization.
fn conic_image(phi: &AffineMap2, center: Vec2, q: Mat2, theta: (f64, f64)) -> Result<Curve> {
    let m = phi.linear;
    let m_inv = m.inverse()?;
    // (p - c')^T Q' (p - c') = 1 with Q' = M^{-T} Q M^{-1}.
    let q_new = m_inv.transpose().mul(&q).mul(&m_inv);
    // Symmetrize away rounding.
    let q_new = Mat2::new(
        q_new.rows[0][0],
        0.5 * (q_new.rows[0][1] + q_new.rows[1][0]),
        0.5 * (q_new.rows[0][1] + q_new.rows[1][0]),
        q_new.rows[1][1],
    );
    let c_new = phi.apply(center);
    let s_old = q.sym_sqrt()?.inverse()?;
    let t_new = q_new.sym_sqrt()?;
    // Unit-circle coordinates: u' = T' M S u is orthogonal.
    let o = t_new.mul(&m).mul(&s_old);
    let alpha = o.rows[1][0].atan2(o.rows[0][0]);
    let span = theta.1 - theta.0;
    let (t0, t1) = if o.det() > 0.0 {
        (theta.0 + alpha, theta.1 + alpha)
    } else {
        // Reflection: u' = alpha - u, orientation restored by reversal.
        (alpha - theta.1, alpha - theta.0)
    };
    debug_assert!((t1 - t0 - span).abs() < 1e-9);
    Curve::ellipse_arc(c_new, q_new, t0, t1)
}

/// The determinant-1 affine map sending an ellipse arc onto a circle of
/// radius `(det Q)^{-1/4}`, centered at the origin.
pub fn ellipse_to_circle_map(curve: &Curve) -> Result<(AffineMap2, f64)> {
    match curve {
        Curve::EllipseArc { center, q, .. } => {
            let t = q.sym_sqrt()?;
            let r = q.det().powf(-0.25);
            let m = t.scale(r);
            let map = AffineMap2::new(m, -m.apply(*center))?;
            Ok((map, r))
        }
        Curve::CircleArc { center, radius, .. } => {
            let map = AffineMap2::new(Mat2::IDENTITY, -*center)?;
            Ok((map, *radius))
        }
        _ => Err(Error::WrongCurveKind("ellipse arc expected")),
    }
}

/// Curvature from a central finite-difference turning-angle estimate;
/// test oracle for `curvature_at`.
pub fn turning_angle_curvature(curve: &Curve, t: f64, h: f64) -> f64 {
    let d_minus = curve.deriv(t - h);
    let d_plus = curve.deriv(t + h);
    let dtheta = d_minus.wedge(d_plus).atan2(d_minus.dot(d_plus));
    let ds = adaptive_simpson(|u| curve.deriv(u).norm(), t - h, t + h, 1e-12).unwrap();
    dtheta / ds
}
