//! The `diamond` command line: integrals, derivatives, gamma tables and
//! inequality checks on a time scale given in the textual scale grammar.
//!
//! [`run`] does all the work and returns the exit status with the text meant
//! for standard output and standard error, so it can be driven from tests.

mod emit;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use diamond_core::calculus::{
    delta_derivative, diamond_alpha_derivative, nabla_derivative, DerivativeConfig,
};
use diamond_core::properties::{
    cauchy_schwarz_check, holder_check, mean_value_k, minkowski_check, property_suite, CheckReport,
};
use diamond_core::quadrature::{integrate, IntegralKind, IntegralResult, QuadConfig};
use diamond_core::random::randomized_verification;
use diamond_core::timescale::{PointInfo, TimeScale};
use diamond_core::{parse_func, parse_scale, Error, FuncExpr};

pub use emit::{format_sig, Emitted};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Distance within which a command-line point is moved onto the scale.
const SNAP_EPS: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "diamond", version, about = "Calculus on bounded time scales")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate a function over [from, to] of the scale.
    Integrate(IntegrateArgs),
    /// Delta, nabla or diamond-alpha derivative at a point.
    Derive(DeriveArgs),
    /// Point class, jumps, graininess and gamma at the notable points.
    GammaTable(GammaArgs),
    /// Check the integral properties and inequalities.
    Verify(VerifyArgs),
    /// Diamond and diamond-alpha integrals side by side.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Delta,
    Nabla,
    Diamond,
    DiamondAlpha,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    output: OutputFormat,
    /// Relative tolerance of quadrature and derivative refinement.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_depth: Option<usize>,
}

impl Common {
    fn quad(&self) -> Result<QuadConfig, Failure> {
        let mut cfg = QuadConfig::default();
        if let Some(t) = self.tol {
            cfg.rel_tol = t;
        }
        if let Some(d) = self.max_depth {
            cfg.max_depth = d;
        }
        cfg.validate().map_err(Failure::usage)?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
struct IntegrateArgs {
    #[arg(long)]
    scale: String,
    #[arg(long)]
    func: String,
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    #[arg(long, value_enum, default_value_t = KindArg::Diamond)]
    kind: KindArg,
    #[arg(long)]
    alpha: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct DeriveArgs {
    #[arg(long)]
    scale: String,
    #[arg(long)]
    func: String,
    #[arg(long, allow_negative_numbers = true)]
    at: f64,
    #[arg(long, value_enum, default_value_t = KindArg::Delta)]
    kind: KindArg,
    #[arg(long)]
    alpha: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct GammaArgs {
    #[arg(long)]
    scale: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    output: OutputFormat,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Omit together with --func to run randomized trials.
    #[arg(long)]
    scale: Option<String>,
    #[arg(long)]
    func: Option<String>,
    #[arg(long, default_value = "1")]
    gfunc: String,
    #[arg(long, allow_negative_numbers = true)]
    from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    to: Option<f64>,
    /// Split point for the additivity check; defaults to --from.
    #[arg(long, allow_negative_numbers = true)]
    split: Option<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
    lambda: f64,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    scale: String,
    #[arg(long)]
    func: String,
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[command(flatten)]
    common: Common,
}

/// Why a command stopped, with the exit status it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }

    fn from_core(context: &str, e: Error) -> Self {
        let code = match e {
            Error::Syntax(_)
            | Error::InvalidSegment { .. }
            | Error::InvalidStep { .. }
            | Error::EmptyScale
            | Error::AlphaOutOfRange(_)
            | Error::ExponentOutOfRange(_)
            | Error::InvalidConfig(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        let message = if context.is_empty() {
            e.to_string()
        } else {
            format!("{context}: {e}")
        };
        Failure { code, message }
    }
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => Outcome {
            code: if out.all_passed { EXIT_OK } else { EXIT_DOMAIN },
            stdout: out.text,
            stderr: out.notes,
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn dispatch(cmd: Command) -> Result<Emitted, Failure> {
    match cmd {
        Command::Integrate(a) => cmd_integrate(a),
        Command::Derive(a) => cmd_derive(a),
        Command::GammaTable(a) => cmd_gamma(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Compare(a) => cmd_compare(a),
    }
}

fn scale_arg(src: &str) -> Result<TimeScale, Failure> {
    parse_scale(src).map_err(|e| Failure::from_core("--scale", e))
}

fn func_arg(flag: &str, src: &str) -> Result<FuncExpr, Failure> {
    parse_func(src).map_err(|e| Failure::from_core(flag, e))
}

/// Moves a point within [`SNAP_EPS`] of a segment end onto the scale.
fn point_arg(ts: &TimeScale, flag: &str, t: f64) -> Result<f64, Failure> {
    let eps = SNAP_EPS * t.abs().max(1.0);
    ts.snap(t, eps)
        .ok_or_else(|| Failure::from_core(flag, Error::PointNotInScale { t }))
}

fn integral_kind(kind: KindArg, alpha: Option<f64>) -> Result<IntegralKind, Failure> {
    match (kind, alpha) {
        (KindArg::DiamondAlpha, Some(a)) => Ok(IntegralKind::DiamondAlpha(a)),
        (KindArg::DiamondAlpha, None) => {
            Err(Failure::usage("--kind diamond-alpha requires --alpha"))
        }
        (_, Some(_)) => Err(Failure::usage(
            "--alpha is only valid with --kind diamond-alpha",
        )),
        (KindArg::Delta, None) => Ok(IntegralKind::Delta),
        (KindArg::Nabla, None) => Ok(IntegralKind::Nabla),
        (KindArg::Diamond, None) => Ok(IntegralKind::Diamond),
    }
}

fn cmd_integrate(args: IntegrateArgs) -> Result<Emitted, Failure> {
    let kind = integral_kind(args.kind, args.alpha)?;
    let cfg = args.common.quad()?;
    let ts = scale_arg(&args.scale)?;
    let f = func_arg("--func", &args.func)?;
    let a = point_arg(&ts, "--from", args.from)?;
    let b = point_arg(&ts, "--to", args.to)?;
    let r = integrate(&ts, &f, a, b, kind, &cfg).map_err(|e| Failure::from_core("", e))?;
    Ok(emit::integral(&r, kind, args.common.output))
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivativeReport {
    pub t: f64,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub value: f64,
}

fn cmd_derive(args: DeriveArgs) -> Result<Emitted, Failure> {
    let kind = integral_kind(args.kind, args.alpha)?;
    let mut cfg = DerivativeConfig::default();
    if let Some(t) = args.common.tol {
        cfg.tol = t;
    }
    cfg.validate().map_err(Failure::usage)?;
    let ts = scale_arg(&args.scale)?;
    let f = func_arg("--func", &args.func)?;
    let t = point_arg(&ts, "--at", args.at)?;
    let value = match kind {
        IntegralKind::Delta => delta_derivative(&ts, &f, t, &cfg),
        IntegralKind::Nabla => nabla_derivative(&ts, &f, t, &cfg),
        IntegralKind::DiamondAlpha(alpha) => diamond_alpha_derivative(&ts, &f, t, alpha, &cfg),
        IntegralKind::Diamond => {
            return Err(Failure::usage(
                "derive supports --kind delta, nabla or diamond-alpha",
            ))
        }
    }
    .map_err(|e| Failure::from_core("", e))?;
    let report = DerivativeReport {
        t,
        kind: emit::kind_name(kind).to_string(),
        alpha: args.alpha,
        value,
    };
    Ok(emit::derivative(&report, args.common.output))
}

/// Segment ends and interval midpoints, in order.
fn notable_points(ts: &TimeScale) -> Vec<f64> {
    let mut pts = Vec::new();
    for s in ts.segments() {
        pts.push(s.lo);
        if !s.is_point() {
            pts.push(0.5 * (s.lo + s.hi));
            pts.push(s.hi);
        }
    }
    pts
}

fn cmd_gamma(args: GammaArgs) -> Result<Emitted, Failure> {
    let ts = scale_arg(&args.scale)?;
    let rows: Vec<PointInfo> = notable_points(&ts)
        .into_iter()
        .map(|t| ts.info(t).map_err(|e| Failure::from_core("", e)))
        .collect::<Result<_, _>>()?;
    Ok(emit::gamma_table(&rows, args.output))
}

fn cmd_verify(args: VerifyArgs) -> Result<Emitted, Failure> {
    let cfg = args.common.quad()?;
    let output = args.common.output;
    let (Some(scale), Some(func)) = (&args.scale, &args.func) else {
        if args.scale.is_some() || args.func.is_some() {
            return Err(Failure::usage(
                "--scale and --func go together; omit both for randomized trials",
            ));
        }
        let reports = randomized_verification(args.seed, args.trials, &cfg);
        return Ok(emit::checks(&reports, output, true));
    };
    let ts = scale_arg(scale)?;
    let f = func_arg("--func", func)?;
    let g = func_arg("--gfunc", &args.gfunc)?;
    let a = point_arg(&ts, "--from", args.from.unwrap_or(ts.min()))?;
    let b = point_arg(&ts, "--to", args.to.unwrap_or(ts.max()))?;
    let c = point_arg(&ts, "--split", args.split.unwrap_or(a))?;
    if a == b {
        return Err(Failure::from_core("", Error::DegenerateRange));
    }
    diamond_core::properties::HolderExponents::new(args.p)
        .map_err(|e| Failure::from_core("--p", e))?;

    let mut reports = property_suite(&ts, &f, &g, a, b, c, args.lambda, &cfg);
    let mut notes = String::new();
    let push =
        |reports: &mut Vec<CheckReport>, name: &str, r: diamond_core::Result<CheckReport>| {
            reports.push(r.unwrap_or_else(|e| CheckReport::failed(name, &e)))
        };
    push(
        &mut reports,
        "holder",
        holder_check(&ts, &f, &g, a, b, args.p, &cfg),
    );
    push(
        &mut reports,
        "cauchy-schwarz",
        cauchy_schwarz_check(&ts, &f, &g, a, b, &cfg),
    );
    push(
        &mut reports,
        "minkowski",
        minkowski_check(&ts, &f, &g, a, b, args.p, &cfg),
    );
    match mean_value_k(&ts, &f, &g, a, b, &cfg) {
        Err(e @ Error::SignChange { .. }) => {
            notes.push_str(&format!("note: mean-value skipped: {e}\n"));
        }
        r => push(&mut reports, "mean-value", r),
    }
    let mut out = emit::checks(&reports, output, false);
    out.notes.push_str(&notes);
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub alpha: f64,
    pub diamond: IntegralResult,
    pub diamond_alpha: IntegralResult,
    /// `diamond - diamond_alpha`.
    pub difference: f64,
}

fn cmd_compare(args: CompareArgs) -> Result<Emitted, Failure> {
    let cfg = args.common.quad()?;
    let ts = scale_arg(&args.scale)?;
    let f = func_arg("--func", &args.func)?;
    let a = point_arg(&ts, "--from", args.from)?;
    let b = point_arg(&ts, "--to", args.to)?;
    let core = |e| Failure::from_core("", e);
    let diamond = integrate(&ts, &f, a, b, IntegralKind::Diamond, &cfg).map_err(core)?;
    let diamond_alpha =
        integrate(&ts, &f, a, b, IntegralKind::DiamondAlpha(args.alpha), &cfg).map_err(core)?;
    let cmp = Comparison {
        alpha: args.alpha,
        difference: diamond.value - diamond_alpha.value,
        diamond,
        diamond_alpha,
    };
    Ok(emit::comparison(&cmp, args.common.output))
}
