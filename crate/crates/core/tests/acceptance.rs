//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Criterion 10 (worker-count independence of the CLI
//! report bytes) lives in the CLI crate's integration tests.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lattice_curve::bounds::{
    circle_bounds, convex_arc_bounds, ellipse_bounds, near_curve_bounds,
    noncollinearity_threshold, perturbation_area_bounds, chord_height, heron_area,
    heron_area_bound, TheoremId,
};
use lattice_curve::counting::{count_near, count_on, default_eps_on, exact_circle_count};
use lattice_curve::curve::{apply_affine_to_curve, ellipse_to_circle_map, Curve};
use lattice_curve::geom::{circumcircle, triangle_area, AffineMap2, Mat2, Vec2};
use lattice_curve::lattice::{apply_affine_to_lattice, Lattice};
use lattice_curve::verify::{
    build_parabolic_instance, check_curvature_intersection, parabolic_sweep, schinzel_sweep,
    IntersectionVerdict,
};

/// Writes directly to the process stderr so the line is visible even when
/// libtest captures output from passing tests.
fn status_line(line: std::fmt::Arguments<'_>) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{line}");
}

macro_rules! criterion {
    ($num:expr, $desc:expr, $body:block) => {{
        let started = Instant::now();
        let run = || -> Result<(), String> { $body };
        match run() {
            Ok(()) => status_line(format_args!(
                "criterion {:>2} PASS ({:.1}s)  {}",
                $num,
                started.elapsed().as_secs_f64(),
                $desc
            )),
            Err(msg) => {
                status_line(format_args!(
                    "criterion {:>2} FAIL ({:.1}s)  {}: {}",
                    $num,
                    started.elapsed().as_secs_f64(),
                    $desc,
                    msg
                ));
                panic!("criterion {} failed: {}", $num, msg);
            }
        }
    }};
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[test]
fn criterion_01_float_counts_match_integer_arithmetic() {
    criterion!(1, "500 integer circles, float vs exact counts, under 60s", {
        let started = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let lat = Lattice::standard();
        for trial in 0..500 {
            let cx = rng.gen_range(-10i64..=10);
            let cy = rng.gen_range(-10i64..=10);
            let r2 = rng.gen_range(1i64..=10_000);
            let r = (r2 as f64).sqrt();
            let circle = Curve::full_circle(Vec2::new(cx as f64, cy as f64), r)
                .map_err(|e| e.to_string())?;
            let exact = exact_circle_count((cx, cy), r2, None, &lat).map_err(|e| e.to_string())?;
            let counted = count_on(&circle, &lat, default_eps_on(&circle))
                .map_err(|e| e.to_string())?;
            ensure(counted.count as u64 == exact, || {
                format!(
                    "trial {trial}: float {} vs exact {exact} at ({cx},{cy}), r^2={r2}",
                    counted.count
                )
            })?;
        }
        ensure(started.elapsed().as_secs() < 60, || {
            format!("took {:.1}s, budget 60s", started.elapsed().as_secs_f64())
        })
    });
}

#[test]
fn criterion_02_anchor_circle_r5() {
    criterion!(2, "x^2 + y^2 = 25 on Z^2: 12 points, below the closed bound", {
        let circle = Curve::full_circle(Vec2::ZERO, 5.0).map_err(|e| e.to_string())?;
        let lat = Lattice::standard();
        let report = count_on(&circle, &lat, default_eps_on(&circle)).map_err(|e| e.to_string())?;
        ensure(report.count == 12, || format!("count = {}", report.count))?;
        let stats = circle.default_stats().map_err(|e| e.to_string())?;
        let verdicts = circle_bounds(&circle, &stats, 1.0).map_err(|e| e.to_string())?;
        let closed = verdicts
            .iter()
            .find(|v| v.theorem_id == TheoremId::ThmCircClosed)
            .ok_or("missing closed verdict")?;
        let bound = closed.bound_value.ok_or("bound missing")?;
        ensure((bound - 2.0 * PI * 5f64.powf(2.0 / 3.0)).abs() < 1e-9, || {
            format!("closed bound = {bound}")
        })?;
        ensure(closed.check(12) == Some(true), || {
            format!("12 violates bound {bound}")
        })
    });
}

#[test]
fn criterion_03_at_most_two_on_short_arcs() {
    criterion!(3, "1000 arcs below the at-most-two threshold never hold 3 points", {
        let mut rng = ChaCha8Rng::seed_from_u64(303);
        let mut applied = 0u64;
        for trial in 0..1000 {
            let r = (rng.gen_range(0.5f64.ln()..30f64.ln())).exp();
            let lat = random_lattice(&mut rng);
            let a_l = lat.fundamental_area();
            // Keep the arc strictly below the threshold 2 (A_L R)^{1/3}.
            let l_max = 2.0 * (a_l * r).cbrt();
            let span = rng.gen_range(0.2..1.0) * (l_max / r).min(PI);
            let t0 = rng.gen_range(0.0..2.0 * PI);
            let center = Vec2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let arc = Curve::circle_arc(center, r, t0, t0 + span).map_err(|e| e.to_string())?;
            let stats = arc.default_stats().map_err(|e| e.to_string())?;
            let verdicts = circle_bounds(&arc, &stats, a_l).map_err(|e| e.to_string())?;
            let v = &verdicts[0];
            if !v.applicable {
                continue;
            }
            applied += 1;
            let count = count_on(&arc, &lat, default_eps_on(&arc))
                .map_err(|e| e.to_string())?
                .count;
            ensure(count <= 2, || {
                format!("trial {trial}: {count} points on a below-threshold arc")
            })?;
            // The general curvature version must agree on circles.
            let gv = convex_arc_bounds(&stats, a_l, false);
            ensure(gv[0].theorem_id == TheoremId::ThmCurvBds1, || "order".into())?;
            if gv[0].applicable {
                ensure(count <= 2, || format!("trial {trial}: general form violated"))?;
            }
        }
        ensure(applied >= 900, || format!("only {applied} applicable instances"))
    });
}

#[test]
fn criterion_04_near_curve_bounds_hold() {
    criterion!(4, "500 near-curve instances satisfy the delta-tube bounds, under 5min", {
        let started = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(404);
        let mut checked = 0u64;
        for trial in 0..500 {
            let r = (rng.gen_range(1f64.ln()..15f64.ln())).exp();
            let closed = trial % 4 == 0;
            let t0 = rng.gen_range(0.0..2.0 * PI);
            let span = if closed { 2.0 * PI } else { rng.gen_range(0.2..0.95 * PI) };
            let center = Vec2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let arc = Curve::circle_arc(center, r, t0, t0 + span).map_err(|e| e.to_string())?;
            let lat = random_lattice(&mut rng);
            let stats = arc.default_stats().map_err(|e| e.to_string())?;
            let a_l = lat.fundamental_area();
            let d_l = lat.min_distance();
            let l = stats.length;
            let threshold = noncollinearity_threshold(d_l, stats.r_max);
            let delta_pos = ((l * l + 3.0 * a_l).sqrt() - l) / 3.0;
            let delta = 0.9 * rng.gen_range(0.05..1.0) * threshold.min(delta_pos);
            if !(delta > 1e-12) {
                continue;
            }
            let verdicts = near_curve_bounds(&stats, a_l, d_l, delta, closed, true)
                .map_err(|e| e.to_string())?;
            let observed = count_near(&arc, &lat, delta).map_err(|e| e.to_string())?.count as u64;
            for v in &verdicts {
                match v.check(observed) {
                    Some(true) => checked += 1,
                    Some(false) => {
                        return Err(format!(
                            "trial {trial}: {} violated, observed {observed}, bound {:?}, delta {delta}",
                            v.theorem_id.as_str(),
                            v.bound_value
                        ))
                    }
                    None => {}
                }
            }
        }
        ensure(checked >= 500, || format!("only {checked} applicable verdicts"))?;
        ensure(started.elapsed().as_secs() < 300, || {
            format!("took {:.1}s, budget 300s", started.elapsed().as_secs_f64())
        })
    });
}

#[test]
fn criterion_05_lemma_numerics() {
    criterion!(5, "10^4 random checks of the triangle and perturbation lemmas", {
        let mut rng = ChaCha8Rng::seed_from_u64(505);
        for trial in 0..10_000 {
            let r = rng.gen_range(0.5..20.0);
            // Three distinct points on the circle, at most a half-turn apart.
            let base = rng.gen_range(0.0..2.0 * PI);
            let mut angles = [
                base,
                base + rng.gen_range(0.01..PI / 2.0),
                base + rng.gen_range(PI / 2.0..PI),
            ];
            angles.sort_by(f64::total_cmp);
            let ps: Vec<Vec2> = angles
                .iter()
                .map(|&a| Vec2::new(r * a.cos(), r * a.sin()))
                .collect();
            let (p0, p1, p2) = (ps[0], ps[1], ps[2]);
            let a = p0.dist(p1);
            let b = p1.dist(p2);
            let c = p0.dist(p2);
            // Circumradius area formula vs shoelace.
            let area = triangle_area(p0, p1, p2);
            let heron = heron_area(a, b, c, r);
            ensure((area - heron).abs() < 1e-8 * area.max(1.0), || {
                format!("trial {trial}: shoelace {area} vs circumradius {heron}")
            })?;
            // And the (a+b)^3/(16R) upper bound.
            ensure(heron <= heron_area_bound(a, b, r) * (1.0 + 1e-12), || {
                format!("trial {trial}: area bound violated")
            })?;
            // Chord height: coordinates of the symmetric configuration.
            if a <= 2.0 * r {
                let h = chord_height(a, r).map_err(|e| e.to_string())?;
                let phi = 2.0 * (a / (2.0 * r)).asin();
                let apex = Vec2::new(0.0, -r);
                let left = Vec2::new(r * (-PI / 2.0 + phi).cos(), r * (-PI / 2.0 + phi).sin());
                ensure(((apex.y - left.y).abs() - h).abs() < 1e-8, || {
                    format!("trial {trial}: chord height mismatch")
                })?;
            }
            // Perturbation bounds on the triangle area.
            let delta = rng.gen_range(1e-4..0.2);
            let jitter = |rng: &mut ChaCha8Rng| {
                let ang = rng.gen_range(0.0..2.0 * PI);
                let rad = rng.gen_range(0.0..1.0f64) * delta;
                Vec2::new(rad * ang.cos(), rad * ang.sin())
            };
            let q0 = p0 + jitter(&mut rng);
            let q1 = p1 + jitter(&mut rng);
            let q2 = p2 + jitter(&mut rng);
            let (one_pt, three_pt) = perturbation_area_bounds([p0, p1, p2], [q0, q1, q2], delta)
                .map_err(|e| e.to_string())?;
            let area_one = triangle_area(p0, p1, q2);
            ensure((area - area_one).abs() <= one_pt * (1.0 + 1e-9) + 1e-12, || {
                format!("trial {trial}: one-point perturbation bound violated")
            })?;
            let area_three = triangle_area(q0, q1, q2);
            ensure((area - area_three).abs() <= three_pt * (1.0 + 1e-9) + 1e-12, || {
                format!("trial {trial}: three-point perturbation bound violated")
            })?;
            // Noncollinearity: below the threshold the perturbed triangle
            // keeps positive area whenever pairwise distances exceed d.
            let d = a.min(b).min(c);
            let thr = noncollinearity_threshold(d, r);
            if delta < thr {
                ensure(area_three > 0.0, || {
                    format!("trial {trial}: collinear below threshold (delta {delta} < {thr})")
                })?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_06_schinzel_family_is_sharp() {
    criterion!(6, "three-point circles: threshold ratio climbs to 1", {
        let report = schinzel_sweep(1.0, &[1.0, 10.0, 100.0, 1000.0]).map_err(|e| e.to_string())?;
        ensure(report.monotone, || "ratio not monotone increasing".into())?;
        for e in &report.entries {
            ensure(e.count == 3, || format!("R = {}: count {}", e.param, e.count))?;
            ensure(e.quantity <= 1.0, || {
                format!("R = {}: ratio {} above 1", e.param, e.quantity)
            })?;
        }
        let last = report.entries.last().ok_or("empty sweep")?;
        ensure(last.quantity > 0.99, || format!("final ratio {}", last.quantity))
    });
}

#[test]
fn criterion_07_parabolic_family_is_sharp() {
    criterion!(7, "parabolic arcs: budget stays under n+2 and tends to n-1", {
        let lat = Lattice::standard();
        let a_values = [10.0, 100.0, 1000.0, 10_000.0];
        let mut violations = Vec::new();
        for n in [2u64, 3, 5] {
            let report = parabolic_sweep(&lat, n, &a_values).map_err(|e| e.to_string())?;
            for e in &report.entries {
                if e.count != n {
                    violations.push(format!("n = {n}, a = {}: count {}", e.param, e.count));
                }
                if e.quantity >= (n + 2) as f64 {
                    violations.push(format!(
                        "n = {n}, a = {}: budget {} >= {}",
                        e.param,
                        e.quantity,
                        n + 2
                    ));
                }
            }
            // Successive gaps to the limit shrink at least 5x per decade.
            for w in report.entries.windows(2) {
                if w[1].gap * 5.0 > w[0].gap {
                    violations.push(format!(
                        "n = {n}: gap only shrank {} -> {} from a = {} to a = {}",
                        w[0].gap, w[1].gap, w[0].param, w[1].param
                    ));
                }
            }
            status_line(format_args!(
                "  parabolic n = {n}: recorded limit estimate {:.6} (budget at largest a)",
                report.entries.last().unwrap().quantity
            ));
        }
        ensure(violations.is_empty(), || violations.join("; "))
    });
}

#[test]
fn criterion_08_curvature_witness_at_intersections() {
    criterion!(8, "200 triple intersections each yield a curvature witness", {
        let mut rng = ChaCha8Rng::seed_from_u64(808);
        let mut found = 0u64;
        let mut attempts = 0u64;
        while found < 200 {
            attempts += 1;
            ensure(attempts < 4000, || format!("only {found} witnesses in 4000 tries"))?;
            // Random ellipse arc with total curvature safely below pi.
            let m = Mat2::new(
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
            );
            if m.det().abs() < 0.3 {
                continue;
            }
            let q = m.transpose().mul(&m).scale(rng.gen_range(0.2..2.0));
            let t0 = rng.gen_range(0.0..2.0 * PI);
            let arc = match Curve::ellipse_arc(Vec2::ZERO, q, t0, t0 + rng.gen_range(0.8..2.2)) {
                Ok(a) => a,
                Err(_) => continue,
            };
            let stats = arc.default_stats().map_err(|e| e.to_string())?;
            if stats.total_curvature > PI - 0.01 {
                continue;
            }
            // Circle through three interior points of the arc.
            let (lo, hi) = arc.domain();
            let mut ts = [
                rng.gen_range(lo..hi),
                rng.gen_range(lo..hi),
                rng.gen_range(lo..hi),
            ];
            ts.sort_by(f64::total_cmp);
            if ts[1] - ts[0] < 0.05 * (hi - lo) || ts[2] - ts[1] < 0.05 * (hi - lo) {
                continue;
            }
            let (center, radius) =
                match circumcircle(arc.point(ts[0]), arc.point(ts[1]), arc.point(ts[2])) {
                    Ok(c) => c,
                    Err(_) => continue,
                };
            match check_curvature_intersection(&arc, center, radius).map_err(|e| e.to_string())? {
                IntersectionVerdict::Witness { kappa, target, .. } => {
                    ensure((kappa - target).abs() <= 1e-6 / radius, || {
                        format!("witness off by {} (tol {})", (kappa - target).abs(), 1e-6 / radius)
                    })?;
                    found += 1;
                }
                // Tangential contact can reduce transversal crossings.
                IntersectionVerdict::FewerThanThreeIntersections { .. } => continue,
                IntersectionVerdict::TotalCurvatureTooLarge { tau } => {
                    return Err(format!("tau filter failed: {tau}"))
                }
            }
        }
        // The hypothesis tau <= pi is actually checked: a long arc is
        // declared out of scope rather than processed.
        let long_arc =
            Curve::ellipse_arc(Vec2::ZERO, Mat2::diag(0.25, 1.0), 0.0, 5.5).map_err(|e| e.to_string())?;
        match check_curvature_intersection(&long_arc, Vec2::new(1.0, 0.0), 1.0)
            .map_err(|e| e.to_string())?
        {
            IntersectionVerdict::TotalCurvatureTooLarge { .. } => Ok(()),
            other => Err(format!("expected tau rejection, got {other:?}")),
        }
    });
}

#[test]
fn criterion_09_affine_reductions() {
    criterion!(9, "affine arclength law, ellipse-to-circle reduction, shear invariance", {
        let mut rng = ChaCha8Rng::seed_from_u64(909);
        // (a) Aff(phi C) = det(M)^{1/3} Aff(C) over 100 random maps.
        for trial in 0..100 {
            let t0 = rng.gen_range(0.0..2.0 * PI);
            let arc = Curve::ellipse_arc(
                Vec2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
                Mat2::diag(rng.gen_range(0.2..2.0), rng.gen_range(0.2..2.0)),
                t0,
                t0 + rng.gen_range(0.3..1.9 * PI),
            )
            .map_err(|e| e.to_string())?;
            let m = loop {
                let m = Mat2::new(
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                );
                if m.det() > 0.2 {
                    break m;
                }
            };
            let phi = AffineMap2::new(m, Vec2::new(1.0, -2.0)).map_err(|e| e.to_string())?;
            let aff0 = arc.stats(1e-10).map_err(|e| e.to_string())?.affine_arclength;
            let aff1 = apply_affine_to_curve(&phi, &arc)
                .map_err(|e| e.to_string())?
                .stats(1e-10)
                .map_err(|e| e.to_string())?
                .affine_arclength;
            let expected = m.det().cbrt() * aff0;
            ensure((aff1 - expected).abs() < 1e-6 * expected, || {
                format!("trial {trial}: Aff {aff1} vs {expected}")
            })?;
        }
        // (b) ellipse_to_circle_map sends the ellipse onto a circle of
        // radius det(Q)^{-1/4} to within 1e-10 R.
        for trial in 0..50 {
            let m = loop {
                let m = Mat2::new(
                    rng.gen_range(-1.5..1.5),
                    rng.gen_range(-1.5..1.5),
                    rng.gen_range(-1.5..1.5),
                    rng.gen_range(-1.5..1.5),
                );
                if m.det().abs() > 0.3 {
                    break m;
                }
            };
            let q = m.transpose().mul(&m).scale(rng.gen_range(0.2..2.0));
            let center = Vec2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let e = Curve::full_ellipse(center, q).map_err(|e| e.to_string())?;
            let (map, radius) = ellipse_to_circle_map(&e).map_err(|e| e.to_string())?;
            ensure((map.det() - 1.0).abs() < 1e-9, || {
                format!("trial {trial}: map det {}", map.det())
            })?;
            for k in 0..64 {
                let t = 2.0 * PI * k as f64 / 64.0;
                let img = map.apply(e.point(t));
                ensure((img.norm() - radius).abs() < 1e-10 * radius, || {
                    format!("trial {trial}: image off circle by {}", (img.norm() - radius).abs())
                })?;
            }
        }
        // (c) A unimodular shear of curve and lattice together changes
        // neither the on-curve count nor the ellipse bound values.
        for trial in 0..50 {
            let q = Mat2::diag(rng.gen_range(0.05..1.0), rng.gen_range(0.05..1.0));
            let e = Curve::full_ellipse(Vec2::ZERO, q).map_err(|e| e.to_string())?;
            let lat = Lattice::standard();
            let shear = Mat2::new(1.0, rng.gen_range(-3i64..=3) as f64, 0.0, 1.0);
            let phi = AffineMap2::new(shear, Vec2::ZERO).map_err(|e| e.to_string())?;
            let e2 = apply_affine_to_curve(&phi, &e).map_err(|e| e.to_string())?;
            let lat2 = apply_affine_to_lattice(&phi, &lat).map_err(|e| e.to_string())?;
            let c1 = count_on(&e, &lat, default_eps_on(&e)).map_err(|e| e.to_string())?;
            let c2 = count_on(&e2, &lat2, default_eps_on(&e2)).map_err(|e| e.to_string())?;
            ensure(c1.count == c2.count, || {
                format!("trial {trial}: counts {} vs {}", c1.count, c2.count)
            })?;
            let s1 = e.stats(1e-10).map_err(|e| e.to_string())?;
            let s2 = e2.stats(1e-10).map_err(|e| e.to_string())?;
            let b1 = ellipse_bounds(&e, &s1, lat.fundamental_area()).map_err(|e| e.to_string())?;
            let b2 = ellipse_bounds(&e2, &s2, lat2.fundamental_area()).map_err(|e| e.to_string())?;
            for (v1, v2) in b1.iter().zip(&b2) {
                if let (Some(x), Some(y)) = (v1.bound_value, v2.bound_value) {
                    ensure((x - y).abs() < 1e-6 * x.abs(), || {
                        format!("trial {trial}: {} bound {x} vs {y}", v1.theorem_id.as_str())
                    })?;
                }
            }
        }
        Ok(())
    });
}

fn random_lattice(rng: &mut ChaCha8Rng) -> Lattice {
    let scale = rng.gen_range(0.5..2.0);
    let shear = rng.gen_range(-2.0..2.0);
    let phi = rng.gen_range(0.0..2.0 * PI);
    let rot = Mat2::rotation(phi);
    Lattice::new(
        Vec2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
        rot.apply(Vec2::new(scale, 0.0)),
        rot.apply(Vec2::new(scale * shear, scale)),
    )
    .expect("nondegenerate by construction")
}
