//! Batch front-end: counts, bound verdicts, verification campaigns,
//! sharpness sweeps, and SVG plots. Exit codes: 0 success, 1 a checked
//! bound was violated or a campaign recorded failures, 2 bad input.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use lattice_curve::bounds::{
    circle_bounds, convex_arc_bounds, ellipse_bounds, near_curve_bounds, BoundVerdict, TheoremId,
};
use lattice_curve::counting::{count_near, count_on, default_eps_on};
use lattice_curve::curve::{Curve, CurveSpec};
use lattice_curve::geom::Vec2;
use lattice_curve::lattice::Lattice;
use lattice_curve::verify::{parabolic_sweep, run_campaign, schinzel_sweep, CampaignConfig};

#[derive(Parser)]
#[command(name = "lattice-curve", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count lattice points on or near a curve.
    Count(CountArgs),
    /// Evaluate theorem bounds for an instance.
    Bound(BoundArgs),
    /// Run a randomized verification campaign.
    Verify(VerifyArgs),
    /// Sweep a sharpness family.
    Sharpness(SharpnessArgs),
    /// Render an instance as SVG.
    Plot(PlotArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Inline curve: JSON or shorthand like "circle R=5".
    #[arg(long)]
    curve: Option<String>,
    /// Curve JSON file.
    #[arg(long)]
    curve_file: Option<String>,
    /// Inline lattice: JSON or "Z2".
    #[arg(long)]
    lattice: Option<String>,
    /// Lattice JSON file.
    #[arg(long)]
    lattice_file: Option<String>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Count points on the curve.
    #[arg(long, conflicts_with = "near")]
    on: bool,
    /// On-curve tolerance (default 1e-9 * diameter).
    #[arg(long)]
    eps: Option<f64>,
    /// Count points within --delta of the curve.
    #[arg(long)]
    near: bool,
    #[arg(long)]
    delta: Option<f64>,
    /// Emit CSV (m,n,x,y,distance,t_star) instead of JSON.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Theorem id or "all".
    #[arg(long)]
    theorem: String,
    /// Near-curve distance for the delta-tube theorems.
    #[arg(long)]
    delta: Option<f64>,
    /// Also run the counting oracle and compare.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Campaign config JSON; a built-in default is used when omitted.
    #[arg(long)]
    config: Option<String>,
    /// RNG seed (default: LATTICE_CURVE_SEED or 0).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct SharpnessArgs {
    /// "schinzel" or "parabolic".
    #[arg(long)]
    family: String,
    /// Radii for the schinzel family, comma separated.
    #[arg(long, value_delimiter = ',')]
    r_sweep: Vec<f64>,
    /// Arc length for the schinzel family.
    #[arg(long, default_value_t = 1.0)]
    l: f64,
    /// Point count for the parabolic family.
    #[arg(long)]
    n: Option<u64>,
    /// Left endpoints for the parabolic family, comma separated.
    #[arg(long, value_delimiter = ',')]
    a_sweep: Vec<f64>,
}

#[derive(Args)]
struct PlotArgs {
    /// Plot spec JSON file.
    #[arg(long)]
    spec: String,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<String>,
}

/// Errors that should exit 2.
struct BadInput(String);

impl<E: std::fmt::Display> From<E> for BadInput {
    fn from(e: E) -> Self {
        BadInput(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(cli) {
        Ok(code) => return code,
        Err(BadInput(msg)) => msg,
    };
    eprintln!("error: {out}");
    ExitCode::from(2)
}

fn run(cli: Cli) -> Result<ExitCode, BadInput> {
    match cli.command {
        Command::Count(args) => cmd_count(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sharpness(args) => cmd_sharpness(args),
        Command::Plot(args) => cmd_plot(args),
    }
}

fn one_of<'a>(
    inline: &'a Option<String>,
    file: &'a Option<String>,
    what: &str,
) -> Result<(bool, &'a str), BadInput> {
    match (inline, file) {
        (Some(_), Some(_)) => Err(BadInput(format!(
            "--{what} and --{what}-file are mutually exclusive"
        ))),
        (Some(s), None) => Ok((true, s)),
        (None, Some(p)) => Ok((false, p)),
        (None, None) => Err(BadInput(format!("missing --{what} or --{what}-file"))),
    }
}

fn load_curve(args: &InstanceArgs) -> Result<Curve, BadInput> {
    let (inline, src) = one_of(&args.curve, &args.curve_file, "curve")?;
    let text = if inline {
        src.to_string()
    } else {
        fs::read_to_string(src)?
    };
    let trimmed = text.trim();
    if let Some(rest) = trimmed.strip_prefix("circle") {
        // Shorthand: "circle R=5" is the full circle of radius 5 at
        // the origin.
        let r = rest
            .trim()
            .strip_prefix("R=")
            .ok_or_else(|| BadInput("circle shorthand is \"circle R=<radius>\"".into()))?
            .parse::<f64>()
            .map_err(|e| BadInput(format!("bad radius: {e}")))?;
        return Ok(Curve::full_circle(Vec2::ZERO, r)?);
    }
    let spec: CurveSpec = serde_json::from_str(trimmed)?;
    Ok(spec.build()?)
}

fn load_lattice(args: &InstanceArgs) -> Result<Lattice, BadInput> {
    let (inline, src) = one_of(&args.lattice, &args.lattice_file, "lattice")?;
    let text = if inline {
        src.to_string()
    } else {
        fs::read_to_string(src)?
    };
    let trimmed = text.trim();
    if trimmed == "Z2" {
        return Ok(Lattice::standard());
    }
    Ok(serde_json::from_str(trimmed)?)
}

fn cmd_count(args: CountArgs) -> Result<ExitCode, BadInput> {
    let curve = load_curve(&args.instance)?;
    let lattice = load_lattice(&args.instance)?;
    let report = if args.near {
        let delta = args
            .delta
            .ok_or_else(|| BadInput("--near requires --delta".into()))?;
        count_near(&curve, &lattice, delta)?
    } else if args.on {
        let eps = args.eps.unwrap_or_else(|| default_eps_on(&curve));
        count_on(&curve, &lattice, eps)?
    } else {
        return Err(BadInput("choose --on or --near".into()));
    };
    if args.csv {
        print!("{}", report.to_csv());
    } else {
        println!("{}", serde_json::to_string_pretty(&report)?);
    }
    Ok(ExitCode::SUCCESS)
}

/// Every verdict that applies to this instance kind.
fn all_verdicts(
    curve: &Curve,
    lattice: &Lattice,
    delta: Option<f64>,
) -> Result<Vec<BoundVerdict>, BadInput> {
    let stats = curve.default_stats()?;
    let a_l = lattice.fundamental_area();
    let d_l = lattice.min_distance();
    let closed = curve.is_closed();
    let is_circle = matches!(curve, Curve::CircleArc { .. });
    let mut verdicts = Vec::new();
    if is_circle {
        verdicts.extend(circle_bounds(curve, &stats, a_l)?);
    }
    if matches!(curve, Curve::CircleArc { .. } | Curve::EllipseArc { .. }) {
        verdicts.extend(ellipse_bounds(curve, &stats, a_l)?);
    }
    verdicts.extend(convex_arc_bounds(&stats, a_l, closed));
    if let Some(delta) = delta {
        verdicts.extend(near_curve_bounds(&stats, a_l, d_l, delta, closed, is_circle)?);
    }
    Ok(verdicts)
}

fn cmd_bound(args: BoundArgs) -> Result<ExitCode, BadInput> {
    let wanted: Option<TheoremId> = if args.theorem == "all" {
        None
    } else {
        Some(
            TheoremId::parse(&args.theorem)
                .ok_or_else(|| BadInput(format!("unknown theorem id {:?}", args.theorem)))?,
        )
    };
    let curve = load_curve(&args.instance)?;
    let lattice = load_lattice(&args.instance)?;
    if let Some(id) = wanted {
        if id.is_near() && args.delta.is_none() {
            return Err(BadInput(format!("{} requires --delta", id.as_str())));
        }
    }
    let mut verdicts = all_verdicts(&curve, &lattice, args.delta)?;
    if let Some(id) = wanted {
        verdicts.retain(|v| v.theorem_id == id);
        if verdicts.is_empty() {
            return Err(BadInput(format!(
                "{} does not apply to this instance kind",
                id.as_str()
            )));
        }
    }

    let mut violated = false;
    let mut outputs = Vec::new();
    for v in &verdicts {
        let mut value = serde_json::to_value(v)?;
        if args.check {
            let observed = if v.theorem_id.is_near() {
                count_near(&curve, &lattice, args.delta.unwrap())?.count as u64
            } else {
                count_on(&curve, &lattice, default_eps_on(&curve))?.count as u64
            };
            let ok = v.check(observed);
            violated |= ok == Some(false);
            let obj = value.as_object_mut().expect("verdict serializes to object");
            obj.insert("observed_count".into(), observed.into());
            obj.insert(
                "observed_ok".into(),
                match ok {
                    Some(b) => serde_json::Value::Bool(b),
                    None => serde_json::Value::Null,
                },
            );
        }
        outputs.push(value);
    }
    println!("{}", serde_json::to_string_pretty(&outputs)?);
    Ok(if violated {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn default_campaign() -> CampaignConfig {
    CampaignConfig {
        trials: 5000,
        families: vec![
            "circle_arc".into(),
            "ellipse_arc".into(),
            "parabola_arc".into(),
        ],
        theorems: vec![],
        radius_range: (0.5, 20.0),
        delta_fraction: 0.5,
    }
}

fn env_seed() -> u64 {
    std::env::var("LATTICE_CURVE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, BadInput> {
    let config = match &args.config {
        Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
        None => default_campaign(),
    };
    let seed = args.seed.unwrap_or_else(env_seed);
    let report = run_campaign(&config, seed, args.workers)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_sharpness(args: SharpnessArgs) -> Result<ExitCode, BadInput> {
    let report = match args.family.as_str() {
        "schinzel" => {
            if args.r_sweep.is_empty() {
                return Err(BadInput("schinzel needs --r-sweep".into()));
            }
            schinzel_sweep(args.l, &args.r_sweep)?
        }
        "parabolic" => {
            let n = args.n.ok_or_else(|| BadInput("parabolic needs --n".into()))?;
            if args.a_sweep.is_empty() {
                return Err(BadInput("parabolic needs --a-sweep".into()));
            }
            parabolic_sweep(&Lattice::standard(), n, &args.a_sweep)?
        }
        other => return Err(BadInput(format!("unknown family {other:?}"))),
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ExitCode::SUCCESS)
}

#[derive(Deserialize)]
struct PlotSpec {
    curve: CurveSpec,
    lattice: lattice_curve::LatticeSpec,
    /// World window [[x0,y0],[x1,y1]]; curve bounding box plus margin
    /// when omitted.
    window: Option<[[f64; 2]; 2]>,
    /// Near-curve tube half-width to shade.
    delta: Option<f64>,
    /// On-curve tolerance for the highlighted points.
    eps: Option<f64>,
    /// Pixel size, default 640x640, minimum 64x64.
    size: Option<[u32; 2]>,
}

fn cmd_plot(args: PlotArgs) -> Result<ExitCode, BadInput> {
    let spec: PlotSpec = serde_json::from_str(&fs::read_to_string(&args.spec)?)?;
    let curve = spec.curve.build()?;
    let lattice: Lattice = Lattice::new(spec.lattice.v0, spec.lattice.v1, spec.lattice.v2)?;
    let (w, h) = match spec.size {
        Some([w, h]) => (w, h),
        None => (640, 640),
    };
    if w < 64 || h < 64 {
        return Err(BadInput("plot size must be at least 64x64".into()));
    }
    let (lo, hi) = match spec.window {
        Some([lo, hi]) => (Vec2::new(lo[0], lo[1]), Vec2::new(hi[0], hi[1])),
        None => {
            let (lo, hi) = curve.bounding_box();
            let margin = 0.08 * (hi - lo).norm().max(1e-9);
            (
                lo - Vec2::new(margin, margin),
                hi + Vec2::new(margin, margin),
            )
        }
    };
    if !(hi.x > lo.x) || !(hi.y > lo.y) {
        return Err(BadInput("plot window is empty".into()));
    }
    let svg = render_svg(&curve, &lattice, lo, hi, w, h, spec.delta, spec.eps)?;
    match &args.out {
        Some(path) => fs::write(path, svg)?,
        None => print!("{svg}"),
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn render_svg(
    curve: &Curve,
    lattice: &Lattice,
    lo: Vec2,
    hi: Vec2,
    w: u32,
    h: u32,
    delta: Option<f64>,
    eps: Option<f64>,
) -> Result<String, BadInput> {
    let sx = w as f64 / (hi.x - lo.x);
    let sy = h as f64 / (hi.y - lo.y);
    let px = |p: Vec2| -> (f64, f64) { ((p.x - lo.x) * sx, (hi.y - p.y) * sy) };
    let fmt = |v: f64| format!("{v:.3}");

    let (a, b) = curve.domain();
    let mut path = String::new();
    for i in 0..=1024 {
        let t = a + (b - a) * i as f64 / 1024.0;
        let (x, y) = px(curve.point(t));
        path.push_str(if i == 0 { "M" } else { " L" });
        path.push_str(&format!("{} {}", fmt(x), fmt(y)));
    }

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    ));
    if let Some(delta) = delta {
        // The tube is a stroke of width 2*delta in world units.
        let width = 2.0 * delta * sx.min(sy);
        svg.push_str(&format!(
            "<path class=\"tube\" d=\"{path}\" fill=\"none\" stroke=\"#9ecae1\" \
             stroke-opacity=\"0.5\" stroke-width=\"{}\" stroke-linecap=\"round\"/>\n",
            fmt(width)
        ));
    }
    // Lattice points inside the window.
    for p in lattice.enumerate_in_box(lo, hi)? {
        let (x, y) = px(p);
        svg.push_str(&format!(
            "<circle class=\"lattice\" cx=\"{}\" cy=\"{}\" r=\"1.5\" fill=\"#888\"/>\n",
            fmt(x),
            fmt(y)
        ));
    }
    svg.push_str(&format!(
        "<path class=\"curve\" d=\"{path}\" fill=\"none\" stroke=\"#08519c\" stroke-width=\"1.5\"/>\n"
    ));
    // Counted points, marked distinctly.
    let report = match delta {
        Some(d) => count_near(curve, lattice, d)?,
        None => count_on(curve, lattice, eps.unwrap_or_else(|| default_eps_on(curve)))?,
    };
    for cp in &report.points {
        let (x, y) = px(cp.point);
        svg.push_str(&format!(
            "<circle class=\"counted\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"none\" \
             stroke=\"#d62728\" stroke-width=\"1.5\"/>\n",
            fmt(x),
            fmt(y)
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
