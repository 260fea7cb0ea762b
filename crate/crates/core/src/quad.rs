//! Adaptive Simpson quadrature for smooth integrands.

use crate::error::{Error, Result};

/// Default relative tolerance.
pub const DEFAULT_REL_TOL: f64 = 1e-10;
/// Subdivision budget.
pub const MAX_INTERVALS: u64 = 1 << 20;

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    estimate: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrate `f` over `[a, b]` to relative tolerance `rel_tol`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(b > a) || !a.is_finite() || !b.is_finite() {
        return Err(Error::ConfigInvalid("empty integration interval".into()));
    }
    // Coarse pass to get a scale for converting the relative tolerance
    // into an absolute one.
    let n = 32;
    let h = (b - a) / n as f64;
    let mut coarse = 0.0;
    for i in 0..n {
        let x0 = a + i as f64 * h;
        let x1 = x0 + h;
        coarse += simpson(x0, x1, f(x0), f(0.5 * (x0 + x1)), f(x1)).abs();
    }
    let abs_tol = rel_tol * coarse.max(f64::MIN_POSITIVE);

    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, b, fa, fm, fb);
    let mut stack = vec![(
        Panel {
            a,
            b,
            fa,
            fm,
            fb,
            estimate: whole,
        },
        abs_tol,
    )];
    let mut total = 0.0;
    let mut used: u64 = 0;
    while let Some((p, tol)) = stack.pop() {
        used += 1;
        if used > MAX_INTERVALS {
            return Err(Error::QuadratureFailure);
        }
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.estimate;
        if delta.abs() <= 15.0 * tol || (p.b - p.a) < 1e-14 * (b - a) {
            total += left + right + delta / 15.0;
        } else {
            stack.push((
                Panel {
                    a: p.a,
                    b: m,
                    fa: p.fa,
                    fm: flm,
                    fb: p.fm,
                    estimate: left,
                },
                0.5 * tol,
            ));
            stack.push((
                Panel {
                    a: m,
                    b: p.b,
                    fa: p.fm,
                    fm: frm,
                    fb: p.fb,
                    estimate: right,
                },
                0.5 * tol,
            ));
        }
    }
    Ok(total)
}

/// Golden-section minimization of a unimodal function on `[a, b]`
/// down to interval width `width`.
pub fn golden_min<F>(f: F, mut a: f64, mut b: f64, width: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    // Never ask for a width below a few ulps of the endpoints, where
    // the interval can stop shrinking.
    let width = width.max(4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1e-300));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a) > width {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
