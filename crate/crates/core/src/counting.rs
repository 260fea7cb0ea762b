//! Brute-force oracles: lattice points exactly on a curve and within
//! distance delta of a curve.

use std::collections::HashMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::lattice::Lattice;

const SCAN_SAMPLES: usize = 1024;
const INDEX_SAMPLES: usize = 4096;
const MAX_CANDIDATES: u128 = 100_000_000;

/// Default on-curve tolerance as a fraction of the curve diameter.
pub const EPS_ON_FRACTION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    OnCurve,
    NearCurve,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountedPoint {
    pub m: i64,
    pub n: i64,
    pub point: Vec2,
    pub distance: f64,
    pub t_star: f64,
}

/// Result of an on-curve or near-curve count. Points are listed in
/// curve order (increasing foot parameter).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountReport {
    pub mode: CountMode,
    pub eps_or_delta: f64,
    pub count: usize,
    pub points: Vec<CountedPoint>,
}

impl CountReport {
    /// CSV with columns m,n,x,y,distance,t_star.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n,x,y,distance,t_star\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                p.m, p.n, p.point.x, p.point.y, p.distance, p.t_star
            ));
        }
        out
    }
}

/// Minimum distance from `q` to the curve and an achieving parameter.
///
/// Closed form for circular arcs; otherwise a 1024-sample scan with
/// ternary refinement of each local minimum.
pub fn distance_to_curve(curve: &Curve, q: Vec2) -> (f64, f64) {
    if let Curve::CircleArc {
        center,
        radius,
        theta,
    } = curve
    {
        return circle_distance(*center, *radius, *theta, q);
    }
    let (a, b) = curve.domain();
    let n = SCAN_SAMPLES;
    let h = (b - a) / n as f64;
    let d2 = |t: f64| (curve.point(t) - q).norm2();
    let samples: Vec<f64> = (0..=n).map(|i| d2(a + i as f64 * h)).collect();
    let width = 1e-12 * (b - a);
    let mut best = (f64::INFINITY, a);
    let mut consider = |t_lo: f64, t_hi: f64| {
        let (t, v) = ternary_min(&d2, t_lo, t_hi, width);
        if v < best.0 {
            best = (v, t);
        }
    };
    if samples[0] <= samples[1] {
        consider(a, a + h);
    }
    if samples[n] <= samples[n - 1] {
        consider(b - h, b);
    }
    for i in 1..n {
        if samples[i] <= samples[i - 1] && samples[i] <= samples[i + 1] {
            consider(a + (i - 1) as f64 * h, a + (i + 1) as f64 * h);
        }
    }
    (best.0.sqrt(), best.1)
}

fn circle_distance(center: Vec2, radius: f64, theta: (f64, f64), q: Vec2) -> (f64, f64) {
    let rel = q - center;
    if rel.norm() == 0.0 {
        return (radius, theta.0);
    }
    // Bring the polar angle of q into [theta0, theta0 + 2 pi).
    let mut t = rel.angle();
    while t < theta.0 {
        t += TAU;
    }
    while t >= theta.0 + TAU {
        t -= TAU;
    }
    if t <= theta.1 {
        ((rel.norm() - radius).abs(), t)
    } else {
        let p0 = center + Vec2::new(theta.0.cos(), theta.0.sin()) * radius;
        let p1 = center + Vec2::new(theta.1.cos(), theta.1.sin()) * radius;
        let d0 = q.dist(p0);
        let d1 = q.dist(p1);
        if d0 <= d1 {
            (d0, theta.0)
        } else {
            (d1, theta.1)
        }
    }
}

fn ternary_min<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, width: f64) -> (f64, f64) {
    // The width target bottoms out at a few ulps of the endpoints, or
    // the interval stops shrinking and the loop would never exit.
    let floor = 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1e-300);
    let width = width.max(floor);
    while b - a > width {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if !(m1 > a && m2 < b && m1 < m2) {
            break;
        }
        if f(m1) <= f(m2) {
            b = m2;
        } else {
            a = m1;
        }
    }
    let t = 0.5 * (a + b);
    (t, f(t))
}

/// Precomputed sample index over a curve for fast point-to-curve
/// distance queries during candidate sweeps. Same refinement as
/// [`distance_to_curve`], accelerated by a spatial hash of samples.
pub struct CurveDistanceIndex<'a> {
    curve: &'a Curve,
    ts: Vec<f64>,
    ps: Vec<Vec2>,
    cell: f64,
    grid: HashMap<(i64, i64), Vec<u32>>,
    /// Upper bound on the gap between consecutive samples.
    gap: f64,
}

impl<'a> CurveDistanceIndex<'a> {
    pub fn new(curve: &'a Curve) -> Self {
        let (a, b) = curve.domain();
        let n = INDEX_SAMPLES;
        let mut ts = Vec::with_capacity(n + 1);
        let mut ps = Vec::with_capacity(n + 1);
        let mut gap: f64 = 0.0;
        for i in 0..=n {
            let t = a + (b - a) * i as f64 / n as f64;
            let p = curve.point(t);
            if let Some(prev) = ps.last() {
                gap = gap.max(p.dist(*prev));
            }
            ts.push(t);
            ps.push(p);
        }
        let cell = gap.max(1e-12);
        let mut grid: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
        for (i, p) in ps.iter().enumerate() {
            grid.entry(cell_of(*p, cell)).or_default().push(i as u32);
        }
        CurveDistanceIndex {
            curve,
            ts,
            ps,
            cell,
            grid,
            gap,
        }
    }

    /// Distance and foot parameter for `q`, or `None` when the distance
    /// is certainly greater than `cutoff`.
    pub fn distance(&self, q: Vec2, cutoff: f64) -> Option<(f64, f64)> {
        if let Curve::CircleArc {
            center,
            radius,
            theta,
        } = self.curve
        {
            let (d, t) = circle_distance(*center, *radius, *theta, q);
            return if d <= cutoff { Some((d, t)) } else { None };
        }
        // Ring search: if no sample within k cells, the nearest sample is
        // farther than k*cell, and the curve farther than k*cell - gap.
        let c = cell_of(q, self.cell);
        let max_ring = ((cutoff + 2.0 * self.gap) / self.cell).ceil() as i64 + 1;
        let mut best_idx: Option<u32> = None;
        let mut best_d2 = f64::INFINITY;
        let mut found_ring: Option<i64> = None;
        for ring in 0..=max_ring {
            if let Some(fr) = found_ring {
                if ring > fr + 1 {
                    break;
                }
            }
            let mut any = false;
            for_ring(c, ring, |key| {
                if let Some(ids) = self.grid.get(&key) {
                    any = true;
                    for &i in ids {
                        let d2 = (self.ps[i as usize] - q).norm2();
                        if d2 < best_d2 {
                            best_d2 = d2;
                            best_idx = Some(i);
                        }
                    }
                }
            });
            if any && found_ring.is_none() {
                found_ring = Some(ring);
            }
        }
        let idx = best_idx?;
        if best_d2.sqrt() - self.gap > cutoff {
            return None;
        }
        let n = self.ts.len() - 1;
        let i = idx as usize;
        let lo = self.ts[i.saturating_sub(2)];
        let hi = self.ts[(i + 2).min(n)];
        let d2f = |t: f64| (self.curve.point(t) - q).norm2();
        let width = 1e-12 * (self.ts[n] - self.ts[0]);
        let (t, v) = ternary_min(&d2f, lo, hi, width);
        let mut best = (v.sqrt(), t);
        // Endpoints can beat the interior refinement.
        for &te in [self.ts[0], self.ts[n]].iter() {
            let d = (self.curve.point(te) - q).norm();
            if d < best.0 {
                best = (d, te);
            }
        }
        if best.0 <= cutoff {
            Some(best)
        } else {
            None
        }
    }
}

fn cell_of(p: Vec2, cell: f64) -> (i64, i64) {
    ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64)
}

fn for_ring(center: (i64, i64), ring: i64, mut f: impl FnMut((i64, i64))) {
    if ring == 0 {
        f(center);
        return;
    }
    for dx in -ring..=ring {
        f((center.0 + dx, center.1 - ring));
        f((center.0 + dx, center.1 + ring));
    }
    for dy in (-ring + 1)..ring {
        f((center.0 - ring, center.1 + dy));
        f((center.0 + ring, center.1 + dy));
    }
}

fn count_with(
    curve: &Curve,
    lattice: &Lattice,
    bound: f64,
    strict: bool,
    mode: CountMode,
) -> Result<CountReport> {
    let (lo, hi) = curve.bounding_box();
    let pad = Vec2::new(bound, bound);
    let (lo, hi) = (lo - pad, hi + pad);
    let candidates = lattice.candidate_count(lo, hi)?;
    if candidates > MAX_CANDIDATES {
        return Err(Error::TooManyCandidates(candidates));
    }
    let index = CurveDistanceIndex::new(curve);
    let mut points = Vec::new();
    for (m, n, p) in lattice.enumerate_in_box_with_coords(lo, hi)? {
        if let Some((d, t)) = index.distance(p, bound) {
            let accept = if strict { d < bound } else { d <= bound };
            if accept {
                points.push(CountedPoint {
                    m,
                    n,
                    point: p,
                    distance: d,
                    t_star: t,
                });
            }
        }
    }
    points.sort_by(|a, b| {
        a.t_star
            .total_cmp(&b.t_star)
            .then(a.m.cmp(&b.m))
            .then(a.n.cmp(&b.n))
    });
    Ok(CountReport {
        mode,
        eps_or_delta: bound,
        count: points.len(),
        points,
    })
}

/// Lattice points at distance `<= eps_on` from the curve.
pub fn count_on(curve: &Curve, lattice: &Lattice, eps_on: f64) -> Result<CountReport> {
    if !(eps_on > 0.0) {
        return Err(Error::ConfigInvalid("eps_on must be positive".into()));
    }
    count_with(curve, lattice, eps_on, false, CountMode::OnCurve)
}

/// Lattice points at distance strictly less than `delta` from the curve.
pub fn count_near(curve: &Curve, lattice: &Lattice, delta: f64) -> Result<CountReport> {
    if !(delta > 0.0) {
        return Err(Error::ConfigInvalid("delta must be positive".into()));
    }
    count_with(curve, lattice, delta, true, CountMode::NearCurve)
}

/// Default on-curve tolerance for a curve.
pub fn default_eps_on(curve: &Curve) -> f64 {
    EPS_ON_FRACTION * curve.diameter()
}

fn is_integral(x: f64) -> Option<i64> {
    let r = x.round();
    if (x - r).abs() <= 1e-7 {
        Some(r as i64)
    } else {
        None
    }
}

/// Exact count of lattice points on the circle `(x-cx)^2 + (y-cy)^2 = r2`,
/// optionally restricted to an angular window. The lattice must be an
/// integer translate / unimodular integer image of Z^2 and the instance
/// integral; the membership test is pure integer arithmetic.
pub fn exact_circle_count(
    center: (i64, i64),
    r2: i64,
    window: Option<(f64, f64)>,
    lattice: &Lattice,
) -> Result<u64> {
    if r2 < 0 {
        return Err(Error::NotIntegerInstance);
    }
    let (v1, v2) = lattice.generators();
    let v0 = lattice.origin();
    for c in [v0.x, v0.y, v1.x, v1.y, v2.x, v2.y] {
        if is_integral(c).is_none() {
            return Err(Error::NotIntegerInstance);
        }
    }
    if (lattice.fundamental_area() - 1.0).abs() > 1e-9 {
        return Err(Error::NotIntegerInstance);
    }
    let r = (r2 as f64).sqrt().floor() as i64 + 1;
    let mut count = 0u64;
    for x in (center.0 - r)..=(center.0 + r) {
        let dx = x - center.0;
        let rem = r2 - dx * dx;
        if rem < 0 {
            continue;
        }
        let dy = (rem as f64).sqrt().round() as i64;
        // Integer perfect-square test with a correction step.
        let dy = if dy * dy > rem { dy - 1 } else { dy };
        if dy * dy != rem {
            continue;
        }
        let ys: &[i64] = if dy == 0 { &[0] } else { &[dy, -dy] };
        for &dy in ys {
            if let Some((t0, t1)) = window {
                let ang = (dy as f64).atan2(dx as f64);
                if !angle_in_window(ang, t0, t1) {
                    continue;
                }
            }
            count += 1;
        }
    }
    Ok(count)
}

fn angle_in_window(ang: f64, t0: f64, t1: f64) -> bool {
    let tol = 1e-9;
    let mut a = ang;
    while a < t0 - tol {
        a += TAU;
    }
    a <= t1 + tol
}
