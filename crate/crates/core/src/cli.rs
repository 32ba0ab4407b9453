//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and renders either human-readable text or a JSON envelope.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::exact::parse_complex_pair;
use crate::algebra::{BigComplex, ExactComplex};
use crate::blaschke::{factor_unimodular, is_circle_preserving, ps_bound_check, unimodular_locus, PsOutcome};
use crate::curve::{complexify, preset_curve, realify, singular_points, Preset, RealCurve, SchwarzForm};
use crate::error::Error;
use crate::puiseux::{branches_at_infinity, classify, condition_a_holds, Limit, PuiseuxBranch};
use crate::ratmap::{image_curve, maps_into, RationalMap};
use crate::suite::run_paper_suite;
use crate::verify::{sample_points, verify_involution, verify_reflection_identity, MapExpr, VerifyConfig};

/// Version of the JSON envelope emitted under `--json`.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OPERATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "schwarzfn", version, about = "Schwarz functions, rational maps between curves and Blaschke quotients")]
struct Cli {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = crate::puiseux::DEFAULT_PRECISION)]
    prec: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CurveArg {
    /// Real polynomial P(x, y).
    #[arg(long, allow_hyphen_values = true)]
    curve: String,
}

#[derive(Args, Debug)]
struct MapArg {
    /// Rational map in z.
    #[arg(long, allow_hyphen_values = true)]
    map: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PresetKind {
    Circle,
    Line,
    Ellipse,
    Rose,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rewrite P(x, y) as Q(z, w) with w standing for conj(z).
    Complexify(CurveArg),
    /// Recover P(x, y) from a Hermitian Q(z, w).
    Realify {
        #[arg(long, allow_hyphen_values = true)]
        qform: String,
    },
    /// Puiseux expansions of the Schwarz branches at infinity.
    Branches {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long, default_value_t = crate::puiseux::DEFAULT_ORDER)]
        order: usize,
    },
    /// Whether some branch has a finite limit at infinity.
    ConditionA {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long, default_value_t = crate::puiseux::DEFAULT_ORDER)]
        order: usize,
    },
    /// Growth class of every branch at infinity.
    Classify {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long, default_value_t = crate::puiseux::DEFAULT_ORDER)]
        order: usize,
    },
    /// Singular points of the curve.
    Singular(CurveArg),
    /// Built-in curve families.
    Preset {
        #[arg(long, value_enum)]
        kind: PresetKind,
        /// circle: x0,y0,r  line: x1,y1,x2,y2  ellipse: a,b  rose: m,a,b
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Image of a curve under a rational map.
    Image {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        curve: CurveArg,
    },
    /// Whether f maps the source curve into the target curve.
    MapsInto {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, allow_hyphen_values = true)]
        source: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
    /// Whether f maps the unit circle into itself.
    BlaschkeCheck(MapArg),
    /// Factor a circle-preserving map into Blaschke products.
    BlaschkeFactor(MapArg),
    /// The real curve |f(z)| = 1.
    UnimodularLocus(MapArg),
    /// Common points of two unimodular loci against the (n1+n2)^2 bound.
    PsBound {
        #[arg(long, allow_hyphen_values = true)]
        p1: String,
        #[arg(long, allow_hyphen_values = true)]
        p2: String,
    },
    /// Sampled check of f(conj S_A(z)) = conj S_B(f(z)).
    VerifyIdentity {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, allow_hyphen_values = true)]
        source: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Sampled check of conj S(conj S(z)) = z.
    VerifyInvolution {
        #[command(flatten)]
        curve: CurveArg,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Run every scripted example and print a pass/fail table.
    PaperSuite,
}

#[derive(Args, Debug)]
struct Sampling {
    /// Base point as "re,im".
    #[arg(long, allow_hyphen_values = true)]
    base: String,
    #[arg(long, default_value_t = crate::verify::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = crate::verify::DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, default_value_t = crate::verify::DEFAULT_STEPS)]
    steps: usize,
    /// Sampling radius; defaults to a fraction of the local curvature radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Also emit the sample points.
    #[arg(long)]
    dump_samples: bool,
}

/// Output of a command: the process exit code and what goes to stdout and
/// stderr.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Successful result of one subcommand.
struct Report {
    payload: Value,
    text: String,
    diagnostics: Vec<String>,
    /// Exit code for commands that succeed but report a failed check.
    code: i32,
}

impl Report {
    fn new(payload: Value, text: impl Into<String>) -> Self {
        Self { payload, text: text.into(), diagnostics: Vec::new(), code: EXIT_OK }
    }
}

enum Failure {
    Usage(String),
    Op(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse_error() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Op(e)
        }
    }
}

type CmdResult = std::result::Result<Report, Failure>;

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let name = command_name(&cli.command);
    let result = dispatch(&cli);
    render(name, cli.json, result)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Complexify(_) => "complexify",
        Command::Realify { .. } => "realify",
        Command::Branches { .. } => "branches",
        Command::ConditionA { .. } => "condition-a",
        Command::Classify { .. } => "classify",
        Command::Singular(_) => "singular",
        Command::Preset { .. } => "preset",
        Command::Image { .. } => "image",
        Command::MapsInto { .. } => "maps-into",
        Command::BlaschkeCheck(_) => "blaschke-check",
        Command::BlaschkeFactor(_) => "blaschke-factor",
        Command::UnimodularLocus(_) => "unimodular-locus",
        Command::PsBound { .. } => "ps-bound",
        Command::VerifyIdentity { .. } => "verify-identity",
        Command::VerifyInvolution { .. } => "verify-involution",
        Command::PaperSuite => "paper-suite",
    }
}

fn render(name: &str, json_out: bool, result: CmdResult) -> Outcome {
    match result {
        Ok(r) => {
            let mut stderr = String::new();
            for d in &r.diagnostics {
                stderr.push_str(&format!("warning: {d}\n"));
            }
            let stdout = if json_out {
                let env = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": name,
                    "status": "ok",
                    "result": r.payload,
                    "diagnostics": r.diagnostics,
                });
                format!("{env}\n")
            } else {
                format!("{}\n", r.text.trim_end())
            };
            Outcome { code: r.code, stdout, stderr }
        }
        Err(f) => {
            let (code, tag, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, "usage", m),
                Failure::Op(e) => (EXIT_OPERATION, e.code(), e.to_string()),
            };
            let stdout = if json_out {
                let env = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": name,
                    "status": "error",
                    "error": { "code": tag, "message": msg },
                    "diagnostics": [],
                });
                format!("{env}\n")
            } else {
                String::new()
            };
            Outcome { code, stdout, stderr: format!("error[{tag}]: {msg}\n") }
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_curve(text: &str) -> std::result::Result<(RealCurve, Vec<String>), Failure> {
    let c = RealCurve::parse(text)?;
    let diag = c.reducibility_warning().into_iter().collect();
    Ok((c, diag))
}

fn parse_point(text: &str, prec: usize) -> std::result::Result<BigComplex, Failure> {
    parse_complex_pair(text)
        .map(|z| BigComplex::from_exact(&z, prec))
        .ok_or_else(|| usage(format!("expected a point \"re,im\", got `{text}`")))
}

fn parse_rat(text: &str) -> std::result::Result<BigRational, Failure> {
    crate::algebra::exact::parse_rational(text.trim()).ok_or_else(|| usage(format!("malformed number `{text}`")))
}

fn dispatch(cli: &Cli) -> CmdResult {
    let prec = cli.prec;
    if prec < crate::algebra::bigcomplex::MIN_PRECISION {
        return Err(usage(format!("--prec must be at least {}", crate::algebra::bigcomplex::MIN_PRECISION)));
    }
    match &cli.command {
        Command::Complexify(a) => {
            let (c, diag) = parse_curve(&a.curve)?;
            let s = complexify(&c)?;
            let mut r = Report::new(json!({ "Q": s.to_string(), "n": s.n() }), s.to_string());
            r.diagnostics = diag;
            Ok(r)
        }
        Command::Realify { qform } => {
            let c = realify(&SchwarzForm::parse(qform)?)?;
            Ok(Report::new(c.to_json(), c.to_string()))
        }
        Command::Branches { curve, order } => {
            let (c, diag) = parse_curve(&curve.curve)?;
            let bs = branches_at_infinity(&complexify(&c)?, *order, prec)?;
            let text = bs
                .iter()
                .enumerate()
                .map(|(k, b)| {
                    let cl = classify(b);
                    format!(
                        "branch {}: m={}{}\n  w = {}\n  {}, limit {}",
                        k + 1,
                        b.m,
                        if b.exact { ", exact" } else { "" },
                        format_series(b),
                        cl.tag,
                        format_limit(&cl.limit)
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let mut r = Report::new(Value::Array(bs.iter().map(PuiseuxBranch::to_json).collect()), text);
            r.diagnostics = diag;
            Ok(r)
        }
        Command::ConditionA { curve, order } => {
            let (c, diag) = parse_curve(&curve.curve)?;
            let s = complexify(&c)?;
            let (holds, witness) = condition_a_holds(&s, *order, prec)?;
            let (text, payload) = if holds {
                let b = witness.expect("witness for a satisfied condition");
                let lim = classify(&b).limit;
                (
                    format!("true: branch w = {} has limit {}", format_series(&b), format_limit(&lim)),
                    json!({ "holds": true, "limit": classify(&b).limit_json(), "branch": b.to_json() }),
                )
            } else {
                let bs = branches_at_infinity(&s, *order, prec)?;
                let why = if bs.len() == 1 {
                    format!("single branch w = {}", format_series(&bs[0]))
                } else {
                    format!("{} branches, none with a finite limit", bs.len())
                };
                (format!("false: {why}"), json!({ "holds": false, "reason": why }))
            };
            let mut r = Report::new(payload, text);
            r.diagnostics = diag;
            Ok(r)
        }
        Command::Classify { curve, order } => {
            let (c, diag) = parse_curve(&curve.curve)?;
            let bs = branches_at_infinity(&complexify(&c)?, *order, prec)?;
            let classes: Vec<_> = bs.iter().map(classify).collect();
            let text = classes
                .iter()
                .enumerate()
                .map(|(k, cl)| format!("branch {}: {}, limit {}", k + 1, cl.tag, format_limit(&cl.limit)))
                .collect::<Vec<_>>()
                .join("\n");
            let payload = classes.iter().map(|cl| json!({ "class": cl.tag, "limit": cl.limit_json() })).collect();
            let mut r = Report::new(Value::Array(payload), text);
            r.diagnostics = diag;
            Ok(r)
        }
        Command::Singular(a) => {
            let (c, diag) = parse_curve(&a.curve)?;
            let pts = singular_points(&c, prec)?;
            let text = if pts.is_empty() {
                "no singular points".to_string()
            } else {
                pts.iter()
                    .map(|p| {
                        format!(
                            "({}, {}){}",
                            format_complex(&p.x),
                            format_complex(&p.y),
                            if p.real { " real" } else { "" }
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            let mut r = Report::new(Value::Array(pts.iter().map(|p| p.to_json()).collect()), text);
            r.diagnostics = diag;
            Ok(r)
        }
        Command::Preset { kind, params } => {
            let preset = build_preset(*kind, params)?;
            let c = preset_curve(&preset)?;
            Ok(Report::new(c.to_json(), c.to_string()))
        }
        Command::Image { map, curve } => {
            let f = RationalMap::parse(&map.map)?;
            let (c, diag) = parse_curve(&curve.curve)?;
            let img = image_curve(&f, &c)?;
            let mut r = Report::new(img.to_json(), img.to_string());
            r.diagnostics = diag;
            Ok(r)
        }
        Command::MapsInto { map, source, target } => {
            let f = RationalMap::parse(&map.map)?;
            let (a, mut diag) = parse_curve(source)?;
            let (b, d2) = parse_curve(target)?;
            diag.extend(d2);
            let v = maps_into(&f, &a, &b)?;
            let mut r = Report::new(json!({ "maps_into": v }), v.to_string());
            r.diagnostics = diag;
            Ok(r)
        }
        Command::BlaschkeCheck(a) => {
            let f = RationalMap::parse(&a.map)?;
            if f.is_constant() {
                return Err(Failure::Op(Error::ConstantMap));
            }
            let v = is_circle_preserving(&f);
            Ok(Report::new(json!({ "circle_preserving": v }), v.to_string()))
        }
        Command::BlaschkeFactor(a) => {
            let f = RationalMap::parse(&a.map)?;
            let fact = factor_unimodular(&f, prec)?;
            let pts = |v: &[(BigComplex, usize)]| {
                if v.is_empty() {
                    "none".to_string()
                } else {
                    v.iter()
                        .map(|(a, k)| if *k == 1 { format_complex(a) } else { format!("{} (x{k})", format_complex(a)) })
                        .collect::<Vec<_>>()
                        .join(", ")
                }
            };
            let text = format!(
                "lambda = {}\nzeros: {}\ninverse factors: {}\nresidual = {:.3e}",
                format_complex(&fact.unimodular_constant),
                pts(&fact.zeros),
                pts(&fact.inverse_factors),
                fact.residual
            );
            Ok(Report::new(fact.to_json(), text))
        }
        Command::UnimodularLocus(a) => {
            let f = RationalMap::parse(&a.map)?;
            if f.is_constant() {
                return Err(Failure::Op(Error::ConstantMap));
            }
            let c = unimodular_locus(&f)?;
            Ok(Report::new(c.to_json(), c.to_string()))
        }
        Command::PsBound { p1, p2 } => {
            let f = RationalMap::parse(p1)?;
            let g = RationalMap::parse(p2)?;
            let out = ps_bound_check(&f, &g, prec)?;
            let text = match &out {
                PsOutcome::SharedBlaschkeStructure { common } => {
                    format!("SHARED_BLASCHKE_STRUCTURE: common component {common}")
                }
                PsOutcome::Count { count, bound, within_bound, .. } => {
                    format!("count = {count} {} {bound}", if *within_bound { "<=" } else { ">" })
                }
            };
            let payload = serde_json::to_value(&out).expect("serializable outcome");
            Ok(Report::new(payload, text))
        }
        Command::VerifyIdentity { map, source, target, sampling } => {
            let f = MapExpr::parse(&map.map)?;
            let (a, mut diag) = parse_curve(source)?;
            let (b, d2) = parse_curve(target)?;
            diag.extend(d2);
            let base = parse_point(&sampling.base, prec)?;
            let cfg = config(prec, sampling);
            let rep = verify_reflection_identity(&f, &a, &b, &base, sampling.samples, sampling.tol, &cfg)?;
            let mut r = verification_report(rep, &a, &base, sampling, &cfg)?;
            r.diagnostics.extend(diag);
            Ok(r)
        }
        Command::VerifyInvolution { curve, sampling } => {
            let (c, diag) = parse_curve(&curve.curve)?;
            let base = parse_point(&sampling.base, prec)?;
            let cfg = config(prec, sampling);
            let rep = verify_involution(&complexify(&c)?, &base, sampling.samples, sampling.tol, &cfg)?;
            let mut r = verification_report(rep, &c, &base, sampling, &cfg)?;
            r.diagnostics.extend(diag);
            Ok(r)
        }
        Command::PaperSuite => {
            let checks = run_paper_suite(prec);
            let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            let mut text = String::new();
            for c in &checks {
                text.push_str(&format!(
                    "{:<4}  {:<width$}  {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                ));
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            text.push_str(&format!("{} checks, {} passed, {} failed", checks.len(), checks.len() - failed, failed));
            let payload = json!({
                "checks": checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
                "passed": failed == 0,
            });
            let mut r = Report::new(payload, text);
            if failed > 0 {
                r.code = EXIT_OPERATION;
            }
            Ok(r)
        }
    }
}

fn config(prec: usize, s: &Sampling) -> VerifyConfig {
    VerifyConfig { precision: prec, steps: s.steps.max(1), radius: s.radius, ..VerifyConfig::default() }
}

fn verification_report(
    rep: crate::verify::VerificationReport,
    curve: &RealCurve,
    base: &BigComplex,
    sampling: &Sampling,
    cfg: &VerifyConfig,
) -> CmdResult {
    let mut payload = rep.to_json();
    let mut text = format!(
        "{}: {} samples, max residual {:.3e} (tolerance {:.1e})",
        if rep.passed { "PASS" } else { "FAIL" },
        rep.samples,
        rep.max_residual,
        rep.tolerance
    );
    if sampling.dump_samples {
        let pts = sample_points(curve, base, sampling.samples, cfg)?;
        payload["sample_points"] = pts.iter().map(|z| json!([z.re_f64(), z.im_f64()])).collect();
        for z in &pts {
            text.push_str(&format!("\n{} {}", z.re_f64(), z.im_f64()));
        }
    }
    let mut r = Report::new(payload, text);
    if !rep.passed {
        r.code = EXIT_OPERATION;
    }
    Ok(r)
}

fn build_preset(kind: PresetKind, params: &[String]) -> std::result::Result<Preset, Failure> {
    let vals = params.iter().map(|p| parse_rat(p)).collect::<std::result::Result<Vec<_>, _>>()?;
    let want = match kind {
        PresetKind::Circle => 3,
        PresetKind::Line => 4,
        PresetKind::Ellipse => 2,
        PresetKind::Rose => 3,
    };
    if vals.len() != want {
        return Err(usage(format!("expected {want} parameters, got {}", vals.len())));
    }
    let pt = |a: &BigRational, b: &BigRational| ExactComplex::new(a.clone(), b.clone());
    Ok(match kind {
        PresetKind::Circle => Preset::Circle { z0: pt(&vals[0], &vals[1]), r: vals[2].clone() },
        PresetKind::Line => Preset::Line { z1: pt(&vals[0], &vals[1]), z2: pt(&vals[2], &vals[3]) },
        PresetKind::Ellipse => Preset::Ellipse { a: vals[0].clone(), b: vals[1].clone() },
        PresetKind::Rose => {
            let m = &vals[0];
            if !m.is_integer() || !m.is_positive() || m.to_integer() > u32::MAX.into() {
                return Err(usage("rose parameter m must be a positive integer"));
            }
            let m = u32::try_from(m.to_integer()).map_err(|_| usage("rose parameter m is too large"))?;
            Preset::Rose { m, a: vals[1].clone(), b: vals[2].clone() }
        }
    })
}

/// Shortest decimal for `x`, snapping values within `1e-12` of an integer.
pub fn format_real(x: f64) -> String {
    let r = x.round();
    if (x - r).abs() <= 1e-12 * x.abs().max(1.0) {
        return format!("{}", r as i64);
    }
    let s = format!("{x:.12}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Compact rendering of a complex number, dropping negligible parts.
pub fn format_complex(c: &BigComplex) -> String {
    let (re, im) = c.to_f64();
    let tiny = 1e-12 * re.hypot(im).max(1.0);
    match (re.abs() <= tiny, im.abs() <= tiny) {
        (_, true) => format_real(re),
        (true, false) => format!("{}*i", format_real(im)),
        (false, false) => {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("({}{}{}*i)", format_real(re), sign, format_real(im.abs()))
        }
    }
}

fn format_limit(l: &Limit) -> String {
    match l {
        Limit::Finite(c) => format_complex(c),
        Limit::Infinity => "infinity".to_string(),
    }
}

fn format_exponent(e: &BigRational) -> String {
    if e.is_integer() {
        format!("^{}", e.numer())
    } else {
        format!("^({}/{})", e.numer(), e.denom())
    }
}

/// Text form of a truncated series, e.g. `1 + z^-1 + z^-2 + ...`.
pub fn format_series(b: &PuiseuxBranch) -> String {
    if b.terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (e, c)) in b.terms.iter().enumerate() {
        let mut coef = format_complex(c);
        let negative = coef.starts_with('-');
        if negative {
            coef.remove(0);
        }
        let monomial = if e.is_zero() {
            coef
        } else {
            let z = if e.is_one() { "z".to_string() } else { format!("z{}", format_exponent(e)) };
            if coef == "1" {
                z
            } else {
                format!("{coef}*{z}")
            }
        };
        match (k, negative) {
            (0, false) => out.push_str(&monomial),
            (0, true) => out.push_str(&format!("-{monomial}")),
            (_, false) => out.push_str(&format!(" + {monomial}")),
            (_, true) => out.push_str(&format!(" - {monomial}")),
        }
    }
    if !b.exact {
        out.push_str(" + ...");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Outcome {
        run(std::iter::once("schwarzfn").chain(args.iter().copied()))
    }

    #[test]
    fn spec_examples() {
        let o = cli(&["complexify", "--curve", "x^2+y^2-1"]);
        assert_eq!((o.code, o.stdout.trim()), (0, "z*w - 1"));
        let o = cli(&["condition-a", "--curve", "y"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout.trim(), "false: single branch w = z");
        let o = cli(&["blaschke-check", "--map", "(z-1/2)/(1-z/2)"]);
        assert_eq!(o.stdout.trim(), "true");
    }

    #[test]
    fn json_envelope() {
        let o = cli(&["--json", "classify", "--curve", "x^2+y^2-2*x"]);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["status"], "ok");
        assert_eq!(v["result"][0]["class"], "BOUNDED_FINITE_LIMIT");
        let o = cli(&["maps-into", "--json", "--map", "z^2", "--source", "x^2+y^2-1", "--target", "x^2+y^2-1"]);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["result"]["maps_into"], true);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(cli(&["complexify"]).code, EXIT_USAGE);
        assert_eq!(cli(&["complexify", "--curve", "x^2+"]).code, EXIT_USAGE);
        let o = cli(&["--json", "blaschke-factor", "--map", "z+1"]);
        assert_eq!(o.code, EXIT_OPERATION);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["error"]["code"], "not_circle_preserving");
        assert_eq!(cli(&["verify-involution", "--curve", "x^2+y^2-1", "--base", "1;0"]).code, EXIT_USAGE);
    }

    #[test]
    fn text_renderings() {
        let o = cli(&["branches", "--curve", "x^2+y^2-2*x", "--order", "3"]);
        assert!(o.stdout.contains("w = 1 + z^-1 + z^-2 + ..."), "{}", o.stdout);
        let o = cli(&["preset", "--kind", "circle", "--params", "0,0,1"]);
        assert_eq!(o.stdout.trim(), "x^2 + y^2 - 1");
        let o = cli(&["preset", "--kind", "line", "--params", "-1,0,1,0"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let o = cli(&["ps-bound", "--p1", "z", "--p2", "z+1"]);
        assert_eq!(o.stdout.trim(), "count = 2 <= 4");
        let o = cli(&["verify-involution", "--curve", "x^2+y^2-1", "--base", "1,0", "--samples", "8"]);
        assert!(o.stdout.starts_with("PASS"), "{}", o.stdout);
    }
}
