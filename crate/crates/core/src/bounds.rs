//! Explicit formulas and theorem bounds with machine-checked
//! preconditions, returned as structured verdicts.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, CurveStats};
use crate::error::{Error, Result};
use crate::geom::Vec2;

/// Slack for numeric inequality preconditions such as `tau <= pi`.
pub const PRECONDITION_SLACK: f64 = 1e-8;
/// Strict verdicts require `observed < bound - STRICT_MARGIN * |bound|`.
pub const STRICT_MARGIN: f64 = 1e-9;

/// Reference constant for circles centered at the origin on Z^2
/// (Cilleruelo–Granville); reported as metadata only.
pub const CILLERUELO_GRANVILLE_CONSTANT: f64 = 2.519_842_099_789_746_4; // 2 * 2^(1/3)

/// Stable theorem identifiers; these strings are the CLI contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    ThmCircAtMostTwo,
    ThmCircOpen,
    ThmCircClosed,
    ThmEllAtMostTwo,
    ThmEllOpen,
    ThmEllClosed,
    ThmCurvBds1,
    ThmCurvBdsOpenBig,
    ThmCurvBdsOpenSmall,
    ThmCurvBdsClosed,
    CorRhoDilationOpenBig,
    CorRhoDilationOpenSmall,
    CorRhoDilationClosed,
    CorRhoCurvOpenBig,
    CorRhoCurvOpenSmall,
    CorRhoCurvClosed,
    ThmNearAtMostTwo,
    ThmNearOpen,
    ThmNearClosed,
    CorNearCirclesA,
    CorNearCirclesB,
    CorNearCirclesC,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::ThmCircAtMostTwo => "thm_circ_at_most_two",
            TheoremId::ThmCircOpen => "thm_circ_open",
            TheoremId::ThmCircClosed => "thm_circ_closed",
            TheoremId::ThmEllAtMostTwo => "thm_ell_at_most_two",
            TheoremId::ThmEllOpen => "thm_ell_open",
            TheoremId::ThmEllClosed => "thm_ell_closed",
            TheoremId::ThmCurvBds1 => "thm_curv_bds_1",
            TheoremId::ThmCurvBdsOpenBig => "thm_curv_bds_open_big",
            TheoremId::ThmCurvBdsOpenSmall => "thm_curv_bds_open_small",
            TheoremId::ThmCurvBdsClosed => "thm_curv_bds_closed",
            TheoremId::CorRhoDilationOpenBig => "cor_rho_dilation_open_big",
            TheoremId::CorRhoDilationOpenSmall => "cor_rho_dilation_open_small",
            TheoremId::CorRhoDilationClosed => "cor_rho_dilation_closed",
            TheoremId::CorRhoCurvOpenBig => "cor_rho_curv_open_big",
            TheoremId::CorRhoCurvOpenSmall => "cor_rho_curv_open_small",
            TheoremId::CorRhoCurvClosed => "cor_rho_curv_closed",
            TheoremId::ThmNearAtMostTwo => "thm_near_at_most_two",
            TheoremId::ThmNearOpen => "thm_near_open",
            TheoremId::ThmNearClosed => "thm_near_closed",
            TheoremId::CorNearCirclesA => "cor_near_circles_a",
            TheoremId::CorNearCirclesB => "cor_near_circles_b",
            TheoremId::CorNearCirclesC => "cor_near_circles_c",
        }
    }

    pub fn all() -> &'static [TheoremId] {
        use TheoremId::*;
        &[
            ThmCircAtMostTwo,
            ThmCircOpen,
            ThmCircClosed,
            ThmEllAtMostTwo,
            ThmEllOpen,
            ThmEllClosed,
            ThmCurvBds1,
            ThmCurvBdsOpenBig,
            ThmCurvBdsOpenSmall,
            ThmCurvBdsClosed,
            CorRhoDilationOpenBig,
            CorRhoDilationOpenSmall,
            CorRhoDilationClosed,
            CorRhoCurvOpenBig,
            CorRhoCurvOpenSmall,
            CorRhoCurvClosed,
            ThmNearAtMostTwo,
            ThmNearOpen,
            ThmNearClosed,
            CorNearCirclesA,
            CorNearCirclesB,
            CorNearCirclesC,
        ]
    }

    pub fn parse(s: &str) -> Option<TheoremId> {
        TheoremId::all().iter().copied().find(|t| t.as_str() == s)
    }

    /// Whether the bound counts near-curve points (uses a delta).
    pub fn is_near(self) -> bool {
        matches!(
            self,
            TheoremId::ThmNearAtMostTwo
                | TheoremId::ThmNearOpen
                | TheoremId::ThmNearClosed
                | TheoremId::CorNearCirclesA
                | TheoremId::CorNearCirclesB
                | TheoremId::CorNearCirclesC
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    StrictLess,
    LessEqual,
}

/// One checked hypothesis of a theorem.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Precondition {
    pub name: String,
    /// Human-readable requirement, e.g. "tau <= pi".
    pub required: String,
    pub observed: f64,
    pub satisfied: bool,
    /// Within the numeric slack band of the threshold.
    pub marginal: bool,
}

impl Precondition {
    fn le(name: &str, observed: f64, threshold: f64) -> Self {
        let slack = PRECONDITION_SLACK * threshold.abs().max(1.0);
        Precondition {
            name: name.to_string(),
            required: format!("{name} <= {threshold}"),
            observed,
            satisfied: observed <= threshold + slack,
            marginal: (observed - threshold).abs() <= slack,
        }
    }

    fn lt(name: &str, observed: f64, threshold: f64) -> Self {
        let slack = PRECONDITION_SLACK * threshold.abs().max(1.0);
        Precondition {
            name: name.to_string(),
            required: format!("{name} < {threshold}"),
            observed,
            satisfied: observed < threshold + slack,
            marginal: (observed - threshold).abs() <= slack,
        }
    }

    fn gt(name: &str, observed: f64, threshold: f64) -> Self {
        let slack = PRECONDITION_SLACK * threshold.abs().max(1.0);
        Precondition {
            name: name.to_string(),
            required: format!("{name} > {threshold}"),
            observed,
            satisfied: observed > threshold - slack,
            marginal: (observed - threshold).abs() <= slack,
        }
    }

    fn flag(name: &str, required: &str, holds: bool) -> Self {
        Precondition {
            name: name.to_string(),
            required: required.to_string(),
            observed: if holds { 1.0 } else { 0.0 },
            satisfied: holds,
            marginal: false,
        }
    }
}

/// Evaluated theorem bound for one instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub theorem_id: TheoremId,
    pub preconditions: Vec<Precondition>,
    /// Finite when applicable; `None` for pure max-count statements.
    pub bound_value: Option<f64>,
    pub comparison: Comparison,
    /// For "at most two" style theorems.
    pub claimed_max_count: Option<u64>,
    pub applicable: bool,
    /// Some precondition sits inside the numeric slack band.
    pub marginal: bool,
    /// Free-form notes, e.g. recorded formula discrepancies.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundVerdict {
    fn build(
        theorem_id: TheoremId,
        preconditions: Vec<Precondition>,
        bound_value: Option<f64>,
        comparison: Comparison,
        claimed_max_count: Option<u64>,
    ) -> Self {
        let applicable = preconditions.iter().all(|p| p.satisfied);
        let marginal = preconditions.iter().any(|p| p.marginal);
        BoundVerdict {
            theorem_id,
            preconditions,
            bound_value: if applicable { bound_value } else { None },
            comparison,
            claimed_max_count,
            applicable,
            marginal,
            notes: Vec::new(),
        }
    }

    /// Checks the observed count against the verdict. `None` when the
    /// verdict is not applicable.
    pub fn check(&self, observed: u64) -> Option<bool> {
        if !self.applicable {
            return None;
        }
        if let Some(maxc) = self.claimed_max_count {
            return Some(observed <= maxc);
        }
        let bound = self.bound_value?;
        Some(match self.comparison {
            Comparison::StrictLess => (observed as f64) < bound - STRICT_MARGIN * bound.abs(),
            Comparison::LessEqual => (observed as f64) <= bound + STRICT_MARGIN * bound.abs(),
        })
    }

    /// observed / bound, tightness of the instance.
    pub fn ratio(&self, observed: u64) -> Option<f64> {
        let b = self.bound_value.or(self.claimed_max_count.map(|c| c as f64))?;
        if !self.applicable || b == 0.0 {
            return None;
        }
        Some(observed as f64 / b)
    }
}

/// Heron/circumradius area `abc / (4R)` of a triangle inscribed in a
/// circle of radius `R`.
pub fn heron_area(a: f64, b: f64, c: f64, r: f64) -> f64 {
    a * b * c / (4.0 * r)
}

/// Upper bound `(a+b)^3 / (16R)` for the area of an inscribed triangle
/// with two side lengths `a`, `b`.
pub fn heron_area_bound(a: f64, b: f64, r: f64) -> f64 {
    (a + b).powi(3) / (16.0 * r)
}

/// Height of the symmetric inscribed triangle over its base: `a^2 / (2R)`.
pub fn chord_height(a: f64, r: f64) -> Result<f64> {
    if !(a > 0.0) || a > 2.0 * r {
        return Err(Error::ChordTooLong);
    }
    Ok(a * a / (2.0 * r))
}

/// Perturbation threshold below which delta-perturbations of three circle
/// points pairwise at distance >= d cannot become collinear.
pub fn noncollinearity_threshold(d: f64, r: f64) -> f64 {
    d * d / (2.0 * (r + d + ((r + d) * (r + d) - d * d).sqrt()))
}

/// Right-hand sides of the one-point and three-point triangle area
/// perturbation bounds. Errors when some pair exceeds `delta`.
pub fn perturbation_area_bounds(
    p: [Vec2; 3],
    p_prime: [Vec2; 3],
    delta: f64,
) -> Result<(f64, f64)> {
    for j in 0..3 {
        if p[j].dist(p_prime[j]) > delta + 1e-12 * delta.max(1.0) {
            return Err(Error::PerturbationTooLarge);
        }
    }
    let one_point = p[0].dist(p[1]) * delta / 2.0;
    let three_point = (p[1].dist(p[0]) + p[2].dist(p[1])) * delta + 1.5 * delta * delta;
    Ok((one_point, three_point))
}

/// The three circle theorems: at-most-two, open arc, closed circle.
pub fn circle_bounds(curve: &Curve, stats: &CurveStats, a_l: f64) -> Result<Vec<BoundVerdict>> {
    let radius = match curve {
        Curve::CircleArc { radius, .. } => *radius,
        _ => return Err(Error::WrongCurveKind("circular arc")),
    };
    let l = stats.length;
    let closed = curve.is_closed();
    let mut out = Vec::new();

    out.push(BoundVerdict::build(
        TheoremId::ThmCircAtMostTwo,
        vec![Precondition::le(
            "length",
            l,
            2.0 * (a_l * radius).cbrt(),
        )],
        None,
        Comparison::LessEqual,
        Some(2),
    ));
    out.push(BoundVerdict::build(
        TheoremId::ThmCircOpen,
        vec![],
        Some(2.0 + l / (a_l * radius).cbrt()),
        Comparison::StrictLess,
        None,
    ));
    out.push(BoundVerdict::build(
        TheoremId::ThmCircClosed,
        vec![Precondition::flag("closed", "curve is a full circle", closed)],
        Some(2.0 * PI * radius.powf(2.0 / 3.0) / a_l.cbrt()),
        Comparison::StrictLess,
        None,
    ));
    Ok(out)
}

/// The three ellipse theorems, in affine arclength and `A_L`.
pub fn ellipse_bounds(curve: &Curve, stats: &CurveStats, a_l: f64) -> Result<Vec<BoundVerdict>> {
    match curve {
        Curve::EllipseArc { .. } | Curve::CircleArc { .. } => {}
        _ => return Err(Error::WrongCurveKind("ellipse arc")),
    }
    let aff = stats.affine_arclength;
    let closed = curve.is_closed();
    Ok(vec![
        BoundVerdict::build(
            TheoremId::ThmEllAtMostTwo,
            vec![Precondition::le("affine_arclength", aff, 2.0 * a_l.cbrt())],
            None,
            Comparison::LessEqual,
            Some(2),
        ),
        BoundVerdict::build(
            TheoremId::ThmEllOpen,
            vec![],
            Some(2.0 + aff / a_l.cbrt()),
            Comparison::StrictLess,
            None,
        ),
        BoundVerdict::build(
            TheoremId::ThmEllClosed,
            vec![Precondition::flag("closed", "curve is a full ellipse", closed)],
            Some(aff / a_l.cbrt()),
            Comparison::StrictLess,
            None,
        ),
    ])
}

/// On-curve bounds for a general convex arc, plus the radius-ratio
/// corollary substitutions.
pub fn convex_arc_bounds(stats: &CurveStats, a_l: f64, closed: bool) -> Vec<BoundVerdict> {
    let l = stats.length;
    let tau = stats.total_curvature;
    let r1 = stats.r_min;
    let r2 = stats.r_max;
    let base = l / (a_l * r1).cbrt();
    let dilation = (tau * r2 / (a_l * r1)).cbrt() * l.powf(2.0 / 3.0);
    let curvature = tau * r2 / (a_l * r1).cbrt();
    let tau_le_pi = || Precondition::le("total_curvature", tau, PI);
    let mut out = Vec::new();
    if closed {
        for (id, expr) in [
            (TheoremId::ThmCurvBdsClosed, base),
            (TheoremId::CorRhoDilationClosed, dilation),
            (TheoremId::CorRhoCurvClosed, curvature),
        ] {
            out.push(BoundVerdict::build(
                id,
                vec![Precondition::flag("closed", "curve is closed", true)],
                Some(expr),
                Comparison::StrictLess,
                None,
            ));
        }
    } else {
        out.push(BoundVerdict::build(
            TheoremId::ThmCurvBds1,
            vec![
                Precondition::le("normalized_length", base, 2.0),
                tau_le_pi(),
            ],
            None,
            Comparison::LessEqual,
            Some(2),
        ));
        for (id, expr, needs_tau) in [
            (TheoremId::ThmCurvBdsOpenBig, base, false),
            (TheoremId::ThmCurvBdsOpenSmall, base, true),
            (TheoremId::CorRhoDilationOpenBig, dilation, false),
            (TheoremId::CorRhoDilationOpenSmall, dilation, true),
            (TheoremId::CorRhoCurvOpenBig, curvature, false),
            (TheoremId::CorRhoCurvOpenSmall, curvature, true),
        ] {
            let offset = if needs_tau { 2.0 } else { 4.0 };
            let pre = if needs_tau { vec![tau_le_pi()] } else { vec![] };
            out.push(BoundVerdict::build(
                id,
                pre,
                Some(offset + expr),
                Comparison::StrictLess,
                None,
            ));
        }
    }
    out
}

/// Near-curve bounds. `is_circle` enables the circle specializations
/// with `R = R1 = R2`.
pub fn near_curve_bounds(
    stats: &CurveStats,
    a_l: f64,
    d_l: f64,
    delta: f64,
    closed: bool,
    is_circle: bool,
) -> Result<Vec<BoundVerdict>> {
    if !(delta > 0.0) {
        return Err(Error::DeltaNotAdmissible("delta must be positive".into()));
    }
    let l = stats.length;
    let tau = stats.total_curvature;
    let r1 = stats.r_min;
    let r2 = stats.r_max;
    let threshold = noncollinearity_threshold(d_l, r2);
    let delta_admissible = || Precondition::lt("delta", delta, threshold);
    let positivity = || {
        Precondition::gt(
            "area_margin",
            a_l / 2.0 - l * delta - 1.5 * delta * delta,
            0.0,
        )
    };
    let tau_le_pi = || Precondition::le("total_curvature", tau, PI);
    let near_bound = l / (r1 * (a_l - 2.0 * l * delta - 3.0 * delta * delta)).cbrt();

    let mut out = Vec::new();
    if closed {
        out.push(BoundVerdict::build(
            TheoremId::ThmNearClosed,
            vec![
                Precondition::flag("closed", "curve is closed", true),
                delta_admissible(),
                positivity(),
            ],
            Some(near_bound),
            Comparison::StrictLess,
            None,
        ));
    } else {
        out.push(BoundVerdict::build(
            TheoremId::ThmNearAtMostTwo,
            vec![
                tau_le_pi(),
                delta_admissible(),
                Precondition::le(
                    "packed_area",
                    l.powi(3) / (8.0 * r1) + 2.0 * l * delta + 3.0 * delta * delta,
                    a_l,
                ),
            ],
            None,
            Comparison::LessEqual,
            Some(2),
        ));
        out.push(BoundVerdict::build(
            TheoremId::ThmNearOpen,
            vec![tau_le_pi(), delta_admissible(), positivity()],
            Some(2.0 + near_bound),
            Comparison::StrictLess,
            None,
        ));
    }

    if is_circle {
        // R1 = R2 = R for a circular arc.
        let r = r1;
        let thr_circ = noncollinearity_threshold(d_l, r);
        let delta_circ = || Precondition::lt("delta", delta, thr_circ);
        if closed {
            let mut v = BoundVerdict::build(
                TheoremId::CorNearCirclesC,
                vec![
                    Precondition::flag("closed", "curve is a full circle", true),
                    delta_circ(),
                    Precondition::gt(
                        "area_margin",
                        a_l / 2.0 - 4.0 * PI * r * delta - 3.0 * delta * delta,
                        0.0,
                    ),
                ],
                Some(
                    2.0 * PI * r.powf(2.0 / 3.0)
                        / (a_l - 4.0 * PI * r * delta - 3.0 * delta * delta).cbrt(),
                ),
                Comparison::StrictLess,
                None,
            );
            v.notes.push(
                "bound uses the 4*pi*R*delta middle term; the printed corollary \
                 drops the delta factor, inconsistent with its own hypothesis and \
                 with the closed near-curve theorem at L = 2*pi*R"
                    .to_string(),
            );
            out.push(v);
        } else {
            out.push(BoundVerdict::build(
                TheoremId::CorNearCirclesA,
                vec![
                    Precondition::le("length", l, PI * r),
                    delta_circ(),
                    Precondition::le(
                        "packed_area",
                        l.powi(3) / (8.0 * r) + 2.0 * l * delta + 3.0 * delta * delta,
                        a_l,
                    ),
                ],
                None,
                Comparison::LessEqual,
                Some(2),
            ));
            out.push(BoundVerdict::build(
                TheoremId::CorNearCirclesB,
                vec![
                    Precondition::le("length", l, PI * r),
                    delta_circ(),
                    Precondition::gt(
                        "area_margin",
                        a_l / 2.0 - 2.0 * l * delta - 3.0 * delta * delta,
                        0.0,
                    ),
                ],
                Some(2.0 + l / (r * (a_l - 2.0 * l * delta - 3.0 * delta * delta)).cbrt()),
                Comparison::StrictLess,
                None,
            ));
        }
    }
    Ok(out)
}
