mod csv;
mod grid;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use rdmmse::bounds::{high_distortion_lower, high_distortion_upper, shannon_lower_bound, MomentSummary};
use rdmmse::capacity::{capacity_boundary_term, capacity_by_integral, capacity_mmse, ChannelProblem};
use rdmmse::curve::{legendre_rate, trace_curve, Method};
use rdmmse::quadrature::integrate;
use rdmmse::schema::{ChannelFile, ProblemFile};
use rdmmse::verify::{self, Case, VerifyOptions};
use rdmmse::{Error, Preset, QuadratureConfig, RdProblem, SParam};

use crate::csv::{cell, g12};
use crate::grid::parse_grid;

#[derive(Parser)]
#[command(name = "rdmmse", version, about = "Rate-distortion curves via MMSE integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace `s,D,R_nats,mmse` over an s-grid.
    Curve(CurveArgs),
    /// Tabulate bounds and the numeric curve over a D-grid.
    Bounds(BoundsArgs),
    /// MMSE integral for the mutual information of a channel.
    Capacity(CapacityArgs),
    /// Run the self-check suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(id = "problem", required = true, multiple = false)]
struct ProblemSource {
    /// Problem file (JSON).
    #[arg(long, group = "problem")]
    input: Option<PathBuf>,
    /// Built-in problem.
    #[arg(long, group = "problem", value_parser = parse_preset)]
    preset: Option<Preset>,
}

#[derive(Args)]
struct Output {
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Relative and absolute quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    source: ProblemSource,
    #[arg(long, value_enum, default_value_t = MethodArg::Legendre)]
    method: MethodArg,
    /// `lo:hi:n[lin|log]` or a comma list.
    #[arg(long, default_value = "0:10:21lin")]
    s_grid: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BoundsArgs {
    /// Problem file with a two-point reproduction `{-a, +a}`.
    #[arg(long, conflicts_with = "preset")]
    input: Option<PathBuf>,
    /// `fig1` or `binary-rep`.
    #[arg(long, value_parser = parse_preset)]
    preset: Option<Preset>,
    /// `lo:hi:n[lin|log]` or a comma list; defaults to 1.25:2:31 for fig1.
    #[arg(long)]
    d_grid: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CapacityArgs {
    /// Channel file (JSON).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "0:1:11lin")]
    s_grid: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only these cases.
    #[arg(long, value_parser = parse_case)]
    case: Vec<Case>,
    #[arg(long, hide = true, default_value_t = 1.0)]
    perturb_mmse: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Legendre,
    Integral,
    Tail,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Legendre => Method::Legendre,
            MethodArg::Integral => Method::IntegralFromZero,
            MethodArg::Tail => Method::IntegralFromInfinity,
        }
    }
}

fn parse_preset(s: &str) -> std::result::Result<Preset, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_case(s: &str) -> std::result::Result<Case, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Verify,
    Input(anyhow::Error),
    Numeric(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(core) if !core.is_input_error() => Failure::Numeric(e),
            _ => Failure::Input(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Curve(a) => cmd_curve(&a),
        Command::Bounds(a) => cmd_bounds(&a),
        Command::Capacity(a) => cmd_capacity(&a),
        Command::Verify(a) => cmd_verify(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("numerical error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn quadrature(output: &Output) -> Result<QuadratureConfig> {
    let mut quad = QuadratureConfig::default();
    if let Some(tol) = output.tol {
        quad.abs_tol = tol;
        quad.rel_tol = tol;
    }
    quad.validate()?;
    Ok(quad)
}

fn emit(output: &Output, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_problem(input: Option<&Path>, preset: Option<Preset>) -> Result<RdProblem> {
    match (input, preset) {
        (Some(path), None) => Ok(ProblemFile::from_json(&read(path)?)?.build()?),
        (None, Some(p)) => Ok(p.problem()?),
        _ => bail!("give exactly one of --input and --preset"),
    }
}

fn cmd_curve(args: &CurveArgs) -> std::result::Result<(), Failure> {
    let quad = quadrature(&args.output)?;
    let s_values = parse_grid(&args.s_grid)?;
    let problem = load_problem(args.source.input.as_deref(), args.source.preset)?;
    let curve = trace_curve(&problem, &s_values, &quad, args.method.into())?;
    let mut text = String::from("s,D,R_nats,mmse\n");
    for pt in &curve.points {
        writeln!(
            text,
            "{},{},{},{}",
            g12(pt.s.value()),
            g12(pt.distortion),
            g12(pt.rate_nats),
            g12(pt.mmse)
        )
        .expect("write to string");
    }
    emit(&args.output, &text)?;
    Ok(())
}

/// Moments for the high-distortion bounds, from a preset or from a problem
/// whose reproduction is `{-a, +a}`.
fn bounds_problem(args: &BoundsArgs) -> Result<(RdProblem, MomentSummary, Option<&'static str>)> {
    match (&args.input, args.preset) {
        (Some(path), None) => {
            let problem = ProblemFile::from_json(&read(path)?)?.build()?;
            let ys = problem.y_grid().points();
            if ys.len() != 2 || ys[0] != -ys[1] || ys[1] <= 0.0 {
                bail!("bounds need a reproduction alphabet {{-a, +a}}, got {ys:?}");
            }
            let m = MomentSummary::from_grid(problem.x_grid(), problem.p(), ys[1])?;
            Ok((problem, m, None))
        }
        (None, preset) => {
            let preset = preset.unwrap_or(Preset::Fig1);
            let m = preset
                .moments()
                .ok_or_else(|| anyhow!("preset {preset} has no moment summary; use fig1 or binary-rep"))?;
            let default = (preset == Preset::Fig1).then_some("1.25:2:31lin");
            Ok((preset.problem()?, m, default))
        }
        (Some(_), Some(_)) => bail!("give at most one of --input and --preset"),
    }
}

fn cmd_bounds(args: &BoundsArgs) -> std::result::Result<(), Failure> {
    quadrature(&args.output)?;
    let (problem, m, default_grid) = bounds_problem(args)?;
    let spec = args
        .d_grid
        .as_deref()
        .or(default_grid)
        .ok_or_else(|| anyhow!("--d-grid is required for this problem"))?;
    let ds = parse_grid(spec)?;
    let mut text = String::from("D,R_L,R_U,R_SLB,R_numeric\n");
    for &d in &ds {
        let lower = high_distortion_lower(&m, d).ok();
        let upper = high_distortion_upper(&m, d).ok();
        let slb = shannon_lower_bound(m.diff_entropy, d).ok().filter(|&r| r > 0.0);
        let numeric = match legendre_rate(&problem, d) {
            Ok(sol) => Some(sol.rate),
            Err(Error::BelowDInfinity { .. }) => None,
            Err(e) => return Err(anyhow::Error::from(e).context(format!("R_numeric at D = {d}")).into()),
        };
        writeln!(
            text,
            "{},{},{},{},{}",
            g12(d),
            cell(lower),
            cell(upper),
            cell(slb),
            cell(numeric)
        )
        .expect("write to string");
    }
    emit(&args.output, &text)?;
    Ok(())
}

fn cmd_capacity(args: &CapacityArgs) -> std::result::Result<(), Failure> {
    let quad = quadrature(&args.output)?;
    let s_values = parse_grid(&args.s_grid)?;
    if s_values[0] < 0.0 {
        return Err(Failure::Input(anyhow!("s must be >= 0")));
    }
    let cp: ChannelProblem = ChannelFile::from_json(&read(&args.input)?)?.build()?;
    let integrand = |s: f64| capacity_mmse(&cp, SParam::new(s).expect("s >= 0")).map_or(f64::NAN, |m| s * m);

    let mut text = String::from("s,mmse,partial_integral\n");
    let (mut partial, mut prev) = (0.0, 0.0);
    for &s in &s_values {
        let mmse = capacity_mmse(&cp, SParam::new(s)?)?;
        if s > prev {
            partial += integrate(integrand, prev, s, &quad)?.value;
        }
        prev = s;
        writeln!(text, "{},{},{}", g12(s), g12(mmse), g12(partial)).expect("write to string");
    }
    let c_p = capacity_by_integral(&cp, &quad)?;
    let mi = cp.mutual_information();
    writeln!(text, "C_p,{},I_XY,{}", g12(c_p), g12(mi)).expect("write to string");

    let boundary = capacity_boundary_term(&cp)?;
    if boundary > 0.0 {
        eprintln!(
            "note: the channel has zero entries; C_p includes the boundary term F(0+) = {} on top of the mmse integral",
            g12(boundary)
        );
    }
    if (c_p - mi).abs() > 1e-6 {
        eprintln!("warning: C_p and I(X;Y) differ by {}", g12(c_p - mi));
    }
    emit(&args.output, &text)?;
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> std::result::Result<(), Failure> {
    if !(args.perturb_mmse > 0.0 && args.perturb_mmse.is_finite()) {
        return Err(Failure::Input(anyhow!("mmse scale must be a positive number")));
    }
    let cases: Vec<Case> = if args.case.is_empty() {
        Case::ALL.to_vec()
    } else {
        args.case.clone()
    };
    let opts = VerifyOptions {
        mmse_scale: args.perturb_mmse,
        ..VerifyOptions::default()
    };
    let checks = verify::run(&cases, &opts);
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    println!("{} checks, {failed} failed", checks.len());
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
