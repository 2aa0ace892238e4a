//! Command-line surface over the core library: cross ratios, orbits, the
//! J-invariant, equivalence tests, normal-form conversions, shape angles
//! with SVG output, and the self-check suites.
//!
//! Exit codes: 0 success, 2 parse/usage error, 3 domain error, 4
//! verification failure. Diagnostics go to stderr; stdout carries only
//! results.

pub mod fmt;
pub mod parse;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use fourpoints::forms::{convert, convert_lambda, hesse_phi, legendre_from_points};
use fourpoints::invariants::{j_equal, j_invariant, j_chain, j_of_points, verify_branching, HasJInvariant};
use fourpoints::moebius::{cross_ratio, cross_ratio_orbit};
use fourpoints::numerics::{cx, Cx, SpherePoint};
use fourpoints::shape::{all_triangle_shapes, shape_svg, SvgOptions};
use fourpoints::{FourPoints, tol};

use fmt::{fmt_cx, fmt_form, fmt_sphere};
use parse::{parse_complex, parse_form, parse_kind, ParseError, ResolvedForm};

#[derive(Parser)]
#[command(
    name = "fourpoints",
    version,
    about = "Cross ratios, the J-invariant, elliptic-curve normal forms and 4-point shapes"
)]
struct Cli {
    /// Emit a single-line JSON object instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Significant digits in printed numbers (1-17)
    #[arg(long, global = true, default_value_t = 15, value_parser = clap::value_parser!(u32).range(1..=17))]
    digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cross ratio of four ordered points
    Xratio {
        /// Complex literal (use `inf` for the point at infinity)
        #[arg(allow_hyphen_values = true)]
        z1: String,
        #[arg(allow_hyphen_values = true)]
        z2: String,
        #[arg(allow_hyphen_values = true)]
        z3: String,
        #[arg(allow_hyphen_values = true)]
        z4: String,
        /// Also print the six-element equivalence orbit
        #[arg(long)]
        orbit: bool,
    },
    /// The values equivalent to a cross ratio
    Orbit {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// J-invariant of a cross ratio or of a 4-point set
    Jinv {
        #[arg(allow_hyphen_values = true, required_unless_present = "points", conflicts_with = "points")]
        lambda: Option<String>,
        /// Compute J of these four points instead
        #[arg(long, num_args = 4, allow_hyphen_values = true, value_names = ["Z1", "Z2", "Z3", "Z4"])]
        points: Option<Vec<String>>,
    },
    /// Test equivalence of two forms or point sets
    Equiv {
        /// e.g. `legendre:-1`, `weierstrass:0,1`, `points:1,i,-1,-i`
        a: String,
        b: String,
    },
    /// Convert a form (or point set) to another normal form
    Convert {
        form: String,
        /// Target kind: weierstrass, legendre, jacobi, edwards, symmetric, hesse
        #[arg(long)]
        to: String,
    },
    /// Angle triples of the four curvilinear triangles, optionally as SVG
    Shape {
        #[arg(allow_hyphen_values = true)]
        z1: String,
        #[arg(allow_hyphen_values = true)]
        z2: String,
        #[arg(allow_hyphen_values = true)]
        z3: String,
        #[arg(allow_hyphen_values = true)]
        z4: String,
        /// Write an SVG rendering of the configuration to this file
        #[arg(long, value_name = "FILE")]
        svg: Option<std::path::PathBuf>,
    },
    /// Run a self-check suite and print pass/fail per item
    Verify {
        #[arg(value_parser = ["branching", "chain", "hesse-phi"])]
        target: String,
        /// Sample count for the randomized suites
        #[arg(long)]
        samples: Option<usize>,
    },
}

enum CliError {
    Parse(ParseError),
    Core(fourpoints::Error),
    Io(std::io::Error),
    /// The verify command found failures; diagnostics already printed.
    Verification,
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Core(_) | CliError::Io(_) => 3,
            CliError::Verification => 4,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<fourpoints::Error> for CliError {
    fn from(e: fourpoints::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Verification => write!(f, "verification failed"),
        }
    }
}

/// Parses `argv` and executes the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            if e.kind() == ErrorKind::DisplayHelp || e.kind() == ErrorKind::DisplayVersion {
                let _ = write!(out, "{rendered}");
                return 0;
            }
            let _ = write!(err, "{rendered}");
            return 2;
        }
    };
    let ctx = Ctx {
        json: cli.json,
        digits: cli.digits as usize,
    };
    match dispatch(&cli.command, &ctx, out) {
        Ok(()) => 0,
        Err(e) => {
            if !matches!(e, CliError::Verification) {
                let _ = writeln!(err, "error: {e}");
            }
            e.exit_code()
        }
    }
}

struct Ctx {
    json: bool,
    digits: usize,
}

impl Ctx {
    fn sphere_json(&self, p: SpherePoint) -> Value {
        match p {
            SpherePoint::Finite(z) => json!({ "re": z.re, "im": z.im }),
            SpherePoint::Infinity => json!("inf"),
        }
    }

    fn cx_json(&self, z: Cx) -> Value {
        json!({ "re": z.re, "im": z.im })
    }

    fn emit(&self, out: &mut dyn Write, payload: Value) -> Result<(), CliError> {
        writeln!(out, "{payload}")?;
        Ok(())
    }
}

fn parse_four(points: &[String]) -> Result<FourPoints, CliError> {
    let mut parsed = [SpherePoint::Infinity; 4];
    for (i, text) in points.iter().enumerate() {
        parsed[i] = parse_complex(text)?;
    }
    Ok(FourPoints::from_array(parsed)?)
}

fn finite_lambda(text: &str) -> Result<Cx, CliError> {
    match parse_complex(text)? {
        SpherePoint::Finite(z) => Ok(z),
        SpherePoint::Infinity => Err(CliError::Core(fourpoints::Error::Domain(
            "a finite cross ratio is required here".into(),
        ))),
    }
}

fn dispatch(command: &Command, ctx: &Ctx, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Xratio { z1, z2, z3, z4, orbit } => {
            cmd_xratio(&[z1.clone(), z2.clone(), z3.clone(), z4.clone()], *orbit, ctx, out)
        }
        Command::Orbit { lambda } => cmd_orbit(lambda, ctx, out),
        Command::Jinv { lambda, points } => cmd_jinv(lambda.as_deref(), points.as_deref(), ctx, out),
        Command::Equiv { a, b } => cmd_equiv(a, b, ctx, out),
        Command::Convert { form, to } => cmd_convert(form, to, ctx, out),
        Command::Shape { z1, z2, z3, z4, svg } => cmd_shape(
            &[z1.clone(), z2.clone(), z3.clone(), z4.clone()],
            svg.as_deref(),
            ctx,
            out,
        ),
        Command::Verify { target, samples } => cmd_verify(target, *samples, ctx, out),
    }
}

fn cmd_xratio(points: &[String], orbit: bool, ctx: &Ctx, out: &mut dyn Write) -> Result<(), CliError> {
    let pts = parse_four(points)?;
    let [z1, z2, z3, z4] = pts.points();
    let chi = cross_ratio(z1, z2, z3, z4)?;
    let orbit_values = if orbit {
        Some(cross_ratio_orbit(chi)?)
    } else {
        None
    };
    if ctx.json {
        let mut result = json!({ "chi": ctx.cx_json(chi) });
        if let Some(o) = &orbit_values {
            result["orbit"] = Value::Array(o.values().iter().map(|&v| ctx.cx_json(v)).collect());
        }
        return ctx.emit(out, json!({
            "command": "xratio",
            "inputs": { "points": pts.points().iter().map(|&p| ctx.sphere_json(p)).collect::<Vec<_>>() },
            "result": result,
            "tolerances": { "orbit_dedup": tol::ORBIT_DEDUP },
        }));
    }
    writeln!(out, "{}", fmt_cx(chi, ctx.digits))?;
    if let Some(o) = orbit_values {
        for v in o.values() {
            writeln!(out, "{}", fmt_cx(*v, ctx.digits))?;
        }
    }
    Ok(())
}

fn cmd_orbit(lambda: &str, ctx: &Ctx, out: &mut dyn Write) -> Result<(), CliError> {
    let lambda = finite_lambda(lambda)?;
    let orbit = cross_ratio_orbit(lambda)?;
    if ctx.json {
        return ctx.emit(out, json!({
            "command": "orbit",
            "inputs": { "lambda": ctx.cx_json(lambda) },
            "result": { "orbit": orbit.values().iter().map(|&v| ctx.cx_json(v)).collect::<Vec<_>>() },
            "tolerances": { "orbit_dedup": tol::ORBIT_DEDUP },
        }));
    }
    for v in orbit.values() {
        writeln!(out, "{}", fmt_cx(*v, ctx.digits))?;
    }
    Ok(())
}

fn cmd_jinv(
    lambda: Option<&str>,
    points: Option<&[String]>,
    ctx: &Ctx,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (inputs, j) = match (lambda, points) {
        (Some(text), None) => {
            let l = parse_complex(text)?;
            (json!({ "lambda": ctx.sphere_json(l) }), j_invariant(l))
        }
        (None, Some(points)) => {
            let pts = parse_four(points)?;
            (
                json!({ "points": pts.points().iter().map(|&p| ctx.sphere_json(p)).collect::<Vec<_>>() }),
                j_of_points(&pts)?,
            )
        }
        _ => unreachable!("clap enforces exactly one input"),
    };
    if ctx.json {
        return ctx.emit(out, json!({
            "command": "jinv",
            "inputs": inputs,
            "result": { "j": ctx.sphere_json(j) },
            "tolerances": {},
        }));
    }
    writeln!(out, "{}", fmt_sphere(j, ctx.digits))?;
    Ok(())
}

fn resolved_j(form: &ResolvedForm) -> Result<SpherePoint, CliError> {
    let j = match form {
        ResolvedForm::Curve(f) => f.j()?,
        ResolvedForm::Points(p) => p.j()?,
    };
    Ok(j)
}

fn cmd_equiv(a: &str, b: &str, ctx: &Ctx, out: &mut dyn Write) -> Result<(), CliError> {
    let fa = parse_form(a)?.resolve()?;
    let fb = parse_form(b)?.resolve()?;
    let ja = resolved_j(&fa)?;
    let jb = resolved_j(&fb)?;
    let equivalent = j_equal(ja, jb, tol::J_EQUIVALENCE);
    if ctx.json {
        return ctx.emit(out, json!({
            "command": "equiv",
            "inputs": { "a": a, "b": b },
            "result": {
                "equivalent": equivalent,
                "j_a": ctx.sphere_json(ja),
                "j_b": ctx.sphere_json(jb),
            },
            "tolerances": { "j_relative": tol::J_EQUIVALENCE },
        }));
    }
    writeln!(out, "{}", if equivalent { "yes" } else { "no" })?;
    writeln!(out, "{}", fmt_sphere(ja, ctx.digits))?;
    writeln!(out, "{}", fmt_sphere(jb, ctx.digits))?;
    Ok(())
}

fn cmd_convert(form: &str, to: &str, ctx: &Ctx, out: &mut dyn Write) -> Result<(), CliError> {
    let target = parse_kind(to)?;
    let converted = match parse_form(form)?.resolve()? {
        ResolvedForm::Curve(f) => convert(&f, target)?,
        ResolvedForm::Points(pts) => convert_lambda(legendre_from_points(&pts)?, target)?,
    };
    if ctx.json {
        return ctx.emit(out, json!({
            "command": "convert",
            "inputs": { "form": form, "to": to },
            "result": {
                "form": fmt_form(&converted, ctx.digits),
                "kind": converted.kind().name(),
                "params": converted.params().iter().map(|&p| ctx.cx_json(p)).collect::<Vec<_>>(),
            },
            "tolerances": { "j_relative": tol::J_EQUIVALENCE },
        }));
    }
    writeln!(out, "{}", fmt_form(&converted, ctx.digits))?;
    Ok(())
}

fn cmd_shape(
    points: &[String],
    svg: Option<&std::path::Path>,
    ctx: &Ctx,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let pts = parse_four(points)?;
    let shapes = all_triangle_shapes(&pts)?;
    let svg_doc = match svg {
        Some(path) => {
            let doc = shape_svg(&pts, &SvgOptions::default())?;
            std::fs::write(path, &doc)?;
            Some(path.display().to_string())
        }
        None => None,
    };
    // entry l omits vertex l; vertices are listed in ascending index order
    let vertex_names: [[usize; 3]; 4] = [[2, 3, 4], [1, 3, 4], [1, 2, 4], [1, 2, 3]];
    if ctx.json {
        let triangles: Vec<Value> = shapes
            .iter()
            .enumerate()
            .map(|(l, s)| {
                json!({
                    "vertices": vertex_names[l].iter().map(|i| format!("z{i}")).collect::<Vec<_>>(),
                    "angles": s.angles().to_vec(),
                    "relabeled": s.relabeled(),
                    "near_concyclic": s.near_concyclic(),
                })
            })
            .collect();
        let mut result = json!({
            "triangles": triangles,
            "near_concyclic": shapes[3].near_concyclic(),
        });
        if let Some(path) = &svg_doc {
            result["svg"] = json!(path);
        }
        return ctx.emit(out, json!({
            "command": "shape",
            "inputs": { "points": pts.points().iter().map(|&p| ctx.sphere_json(p)).collect::<Vec<_>>() },
            "result": result,
            "tolerances": { "concyclic": tol::CONCYCLIC, "near_concyclic": tol::NEAR_CONCYCLIC },
        }));
    }
    for (l, s) in shapes.iter().enumerate() {
        let [a, b, c] = s.angles();
        let names: Vec<String> = vertex_names[l].iter().map(|i| format!("z{i}")).collect();
        writeln!(
            out,
            "triangle({}): {} {} {}{}{}",
            names.join(","),
            fmt::fmt_f64(a, ctx.digits),
            fmt::fmt_f64(b, ctx.digits),
            fmt::fmt_f64(c, ctx.digits),
            if s.relabeled() { " (relabeled)" } else { "" },
            if s.near_concyclic() { " (nearly concyclic)" } else { "" },
        )?;
    }
    Ok(())
}

struct VerifyItem {
    name: String,
    passed: bool,
    detail: String,
}

fn cmd_verify(
    target: &str,
    samples: Option<usize>,
    ctx: &Ctx,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (items, tolerances, samples_used) = match target {
        "branching" => (verify_branching_items(ctx), json!({ "entry": 1e-8, "slope": 0.1 }), None),
        "chain" => {
            let n = samples.unwrap_or(1000);
            (verify_chain_items(n), json!({ "relative": 1e-9 }), Some(n))
        }
        "hesse-phi" => {
            let n = samples.unwrap_or(200);
            (verify_hesse_phi_items(n), json!({ "relative": 1e-8 }), Some(n))
        }
        _ => unreachable!("clap restricts the target"),
    };
    let passed = items.iter().all(|i| i.passed);
    if ctx.json {
        let item_values: Vec<Value> = items
            .iter()
            .map(|i| json!({ "name": i.name, "passed": i.passed, "detail": i.detail }))
            .collect();
        let mut inputs = json!({ "target": target });
        if let Some(n) = samples_used {
            inputs["samples"] = json!(n);
        }
        ctx.emit(out, json!({
            "command": "verify",
            "inputs": inputs,
            "result": { "items": item_values, "passed": passed },
            "tolerances": tolerances,
        }))?;
    } else {
        for i in &items {
            writeln!(out, "{} {}: {}", if i.passed { "PASS" } else { "FAIL" }, i.name, i.detail)?;
        }
    }
    if passed {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}

fn verify_branching_items(ctx: &Ctx) -> Vec<VerifyItem> {
    match verify_branching(1e-8) {
        Ok(report) => {
            let mut items: Vec<VerifyItem> = report
                .entries
                .iter()
                .map(|e| VerifyItem {
                    name: format!("branching {}", fmt_sphere(e.critical_point, 6)),
                    passed: true,
                    detail: format!(
                        "critical value {}, multiplicity {}, slope {:.4}",
                        fmt_sphere(e.critical_value, 6),
                        e.multiplicity,
                        e.measured_slope
                    ),
                })
                .collect();
            items.extend(report.fiber_checks.iter().map(|(v, sum, ok)| VerifyItem {
                name: format!("fiber over {}", fmt_sphere(*v, 6)),
                passed: *ok,
                detail: format!("multiplicities sum to {sum} (degree 6)"),
            }));
            let _ = ctx;
            items
        }
        Err(e) => vec![VerifyItem {
            name: "branching".into(),
            passed: false,
            detail: e.to_string(),
        }],
    }
}

fn sample_lambda(rng: &mut ChaCha8Rng) -> Cx {
    loop {
        let l = cx(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        if l.norm() <= 10.0 && l.norm() >= 1e-3 && (l - Cx::ONE).norm() >= 1e-3 {
            return l;
        }
    }
}

fn verify_chain_items(samples: usize) -> Vec<VerifyItem> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1A1_0001);
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for _ in 0..samples {
        let lambda = sample_lambda(&mut rng);
        let (chained, direct) = (j_chain(lambda), j_invariant(SpherePoint::Finite(lambda)));
        let rel = match (chained, direct) {
            (SpherePoint::Finite(a), SpherePoint::Finite(b)) => (a - b).norm() / (1.0 + b.norm()),
            _ => f64::INFINITY,
        };
        if rel > worst {
            worst = rel;
        }
        if rel > 1e-9 {
            failures += 1;
        }
    }
    vec![VerifyItem {
        name: "chain identity".into(),
        passed: failures == 0,
        detail: format!("{samples} samples, worst relative deviation {worst:.3e} (bound 1e-9), {failures} failures"),
    }]
}

fn verify_hesse_phi_items(samples: usize) -> Vec<VerifyItem> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1A1_0002);
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for _ in 0..samples {
        let k = loop {
            let k = cx(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
            let k3 = k * k * k;
            if k.norm() <= 5.0 && k.norm() >= 1e-2 && (k3 - Cx::ONE).norm() >= 1e-2 {
                break k;
            }
        };
        let rel = match (
            hesse_phi(k),
            fourpoints::forms::branch_points(&fourpoints::CurveForm::Hesse { k })
                .and_then(|p| j_of_points(&p)),
        ) {
            (Ok(phi), Ok(SpherePoint::Finite(j))) => (phi - j).norm() / (1.0 + j.norm()),
            _ => f64::INFINITY,
        };
        if rel > worst {
            worst = rel;
        }
        if rel > 1e-8 {
            failures += 1;
        }
    }
    vec![VerifyItem {
        name: "hesse-phi closed form".into(),
        passed: failures == 0,
        detail: format!("{samples} samples, worst relative deviation {worst:.3e} (bound 1e-8), {failures} failures"),
    }]
}
