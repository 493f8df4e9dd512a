//! `mimoic`: capacity-region bounds, constant-gap certificates and DoF/GDoF
//! characterizations for the two-user MIMO interference channel with
//! limited receiver cooperation.
//!
//! All commands write their results to files; stdout carries a one-line
//! human summary. Outputs are deterministic for fixed flags and seed (the
//! only exception is the `wall_time_ms` report field).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mimoic_core::achievability::{combined_achievable, guaranteed_inner_region};
use mimoic_core::asymptotics::{
    dof_constraints, dof_region, empirical_slope, gdof_curve, gdof_region, gdof_value, DofSpec,
    GdofSpec,
};
use mimoic_core::channel::{generate, siso_from_scalars, validate as validate_channel, Warning};
use mimoic_core::outer::outer_region;
use mimoic_core::region::{contains, erode_by_box, max_gap};
use mimoic_core::{ChannelInstance, ChannelSeedSpec, CoopSpec, GainSpec};

mod io;
mod svg;
mod validate;

/// Errors carrying the process exit code: usage problems exit 2, numeric
/// or property failures exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn failure(msg: impl Into<String>) -> Self {
        CliError::Failure(msg.into())
    }
}

#[derive(Parser)]
#[command(
    name = "mimoic",
    version,
    about = "Rate-region bounds and DoF/GDoF tools for the two-user MIMO \
             interference channel with receiver cooperation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a channel instance file.
    GenChannel(GenChannelArgs),
    /// Compute outer / guaranteed-inner / achievable regions for a channel.
    Region(RegionArgs),
    /// Measure the gap between the outer bound and the inner regions.
    Gap(GapArgs),
    /// Degrees-of-freedom region for antenna counts and backhaul exponents.
    Dof(DofArgs),
    /// Generalized degrees of freedom for the symmetric configuration.
    Gdof(GdofArgs),
    /// GDoF-versus-alpha curve as CSV.
    GdofCurve(GdofCurveArgs),
    /// Empirical prelog slopes of the outer-bound terms over an SNR sweep.
    Slopes(SlopesArgs),
    /// Run the randomized property suite.
    Validate(ValidateArgs),
}

fn parse_capacity(s: &str) -> Result<f64, String> {
    if s == "inf" {
        return Ok(f64::INFINITY);
    }
    s.parse::<f64>().map_err(|e| e.to_string())
}

#[derive(Args)]
struct GenChannelArgs {
    #[arg(long, default_value_t = 1)]
    m1: usize,
    #[arg(long, default_value_t = 1)]
    n1: usize,
    #[arg(long, default_value_t = 1)]
    m2: usize,
    #[arg(long, default_value_t = 1)]
    n2: usize,
    /// Direct link gains (linear).
    #[arg(long)]
    rho11: Option<f64>,
    #[arg(long)]
    rho12: Option<f64>,
    #[arg(long)]
    rho21: Option<f64>,
    #[arg(long)]
    rho22: Option<f64>,
    /// Alternative gain spec: direct links at SNR, cross links at SNR^alpha.
    #[arg(long, conflicts_with_all = ["rho11", "rho12", "rho21", "rho22"])]
    snr: Option<f64>,
    #[arg(long, requires = "snr")]
    alpha: Option<f64>,
    /// Backhaul capacities in bits/use; "inf" allowed.
    #[arg(long, value_parser = parse_capacity, default_value = "0")]
    c12: f64,
    #[arg(long, value_parser = parse_capacity, default_value = "0")]
    c21: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Build the unit-coefficient single-antenna instance from SNR/INR
    /// scalars instead of drawing random matrices.
    #[arg(long, requires_all = ["snr1", "snr2", "inr1", "inr2"])]
    siso: bool,
    #[arg(long)]
    snr1: Option<f64>,
    #[arg(long)]
    snr2: Option<f64>,
    #[arg(long)]
    inr1: Option<f64>,
    #[arg(long)]
    inr2: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RegionArgs {
    #[arg(long)]
    channel: PathBuf,
    /// outer | inner-guaranteed | achievable | all
    #[arg(long)]
    which: String,
    #[arg(long)]
    out: PathBuf,
    /// Optional SVG plot of the requested regions.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct GapArgs {
    #[arg(long)]
    channel: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DofArgs {
    #[arg(long)]
    m1: usize,
    #[arg(long)]
    n1: usize,
    #[arg(long)]
    m2: usize,
    #[arg(long)]
    n2: usize,
    #[arg(long, default_value_t = 0.0)]
    beta12: f64,
    #[arg(long, default_value_t = 0.0)]
    beta21: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GdofArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GdofCurveArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    alpha_min: f64,
    #[arg(long, default_value_t = 3.0)]
    alpha_max: f64,
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SlopesArgs {
    #[arg(long)]
    m1: usize,
    #[arg(long)]
    n1: usize,
    #[arg(long)]
    m2: usize,
    #[arg(long)]
    n2: usize,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sweep range as decade exponents, e.g. 6:12.
    #[arg(long, default_value = "6:12")]
    snr_decades: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    max_antennas: usize,
    /// Decade range for the slope check, e.g. 6:12.
    #[arg(long, default_value = "6:12")]
    snr_decades: String,
    /// Optional JSON report path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Deliberately corrupt one check; the suite must then fail (self-test).
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn parse_decades(s: &str) -> Result<(f64, f64), CliError> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| CliError::usage("--snr-decades expects the form a:b"))?;
    let lo: f64 = a
        .parse()
        .map_err(|_| CliError::usage("--snr-decades: bad lower exponent"))?;
    let hi: f64 = b
        .parse()
        .map_err(|_| CliError::usage("--snr-decades: bad upper exponent"))?;
    if !(hi > lo) {
        return Err(CliError::usage("--snr-decades: need a < b"));
    }
    Ok((lo, hi))
}

fn load_channel(path: &Path) -> Result<ChannelInstance, CliError> {
    let ch = io::channel_from_json(&io::read_json(path)?)?;
    for w in validate_channel(&ch).map_err(|e| CliError::usage(format!("channel file: {e}")))? {
        match w {
            Warning::IllConditioned { matrix, cond } => {
                eprintln!("warning: {matrix} has condition number {cond:.3e}")
            }
        }
    }
    Ok(ch)
}

fn cmd_gen_channel(args: &GenChannelArgs) -> Result<(), CliError> {
    let ch = if args.siso {
        siso_from_scalars(
            args.snr1.unwrap(),
            args.snr2.unwrap(),
            args.inr1.unwrap(),
            args.inr2.unwrap(),
            args.c12,
            args.c21,
        )
        .map_err(|e| CliError::usage(format!("bad scalar parameters: {e}")))?
    } else {
        let gains = if let Some(snr) = args.snr {
            GainSpec::SnrExponent {
                snr,
                alpha: args.alpha.unwrap_or(1.0),
            }
        } else {
            GainSpec::Direct {
                rho11: args.rho11.unwrap_or(1.0),
                rho12: args.rho12.unwrap_or(1.0),
                rho21: args.rho21.unwrap_or(1.0),
                rho22: args.rho22.unwrap_or(1.0),
            }
        };
        generate(&ChannelSeedSpec {
            m1: args.m1,
            n1: args.n1,
            m2: args.m2,
            n2: args.n2,
            gains,
            coop: CoopSpec::Direct {
                c12: args.c12,
                c21: args.c21,
            },
            seed: args.seed,
        })
        .map_err(|e| CliError::usage(format!("bad channel spec: {e}")))?
    };
    io::write_json(&args.out, &io::channel_to_json(&ch))?;
    println!(
        "wrote channel ({},{},{},{}) to {}",
        ch.m1,
        ch.n1,
        ch.m2,
        ch.n2,
        args.out.display()
    );
    Ok(())
}

fn numeric(e: mimoic_core::Error) -> CliError {
    CliError::failure(format!("numeric failure: {e}"))
}

fn cmd_region(args: &RegionArgs) -> Result<(), CliError> {
    let ch = load_channel(&args.channel)?;
    let mut named: Vec<(&str, mimoic_core::RateRegion2D)> = Vec::new();
    match args.which.as_str() {
        "outer" => named.push(("outer", outer_region(&ch).map_err(numeric)?)),
        "inner-guaranteed" => named.push((
            "inner_guaranteed",
            guaranteed_inner_region(&ch).map_err(numeric)?,
        )),
        "achievable" => named.push(("achievable", combined_achievable(&ch).map_err(numeric)?)),
        "all" => {
            named.push(("outer", outer_region(&ch).map_err(numeric)?));
            named.push((
                "inner_guaranteed",
                guaranteed_inner_region(&ch).map_err(numeric)?,
            ));
            named.push(("achievable", combined_achievable(&ch).map_err(numeric)?));
        }
        other => {
            return Err(CliError::usage(format!(
                "--which must be outer|inner-guaranteed|achievable|all, got \"{other}\""
            )))
        }
    }
    let value = if named.len() == 1 {
        io::region_to_json(&named[0].1)
    } else {
        let mut obj = serde_json::Map::new();
        for (name, region) in &named {
            obj.insert((*name).into(), io::region_to_json(region));
        }
        Value::Object(obj)
    };
    io::write_json(&args.out, &value)?;
    if let Some(svg_path) = &args.svg {
        let refs: Vec<(&str, &mimoic_core::RateRegion2D)> =
            named.iter().map(|(n, r)| (*n, r)).collect();
        std::fs::write(svg_path, svg::render(&refs))
            .map_err(|e| CliError::failure(format!("cannot write SVG: {e}")))?;
    }
    println!(
        "wrote {} region(s) to {}",
        named.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_gap(args: &GapArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let ch = load_channel(&args.channel)?;
    let outer = outer_region(&ch).map_err(numeric)?;
    let inner = guaranteed_inner_region(&ch).map_err(numeric)?;
    let achievable = combined_achievable(&ch).map_err(numeric)?;
    let bound = (ch.n1 + ch.n2) as f64;

    let eroded = erode_by_box(&outer, bound, bound);
    let erode_in_inner = eroded.vertices.iter().all(|&v| contains(&inner, v, 1e-9));
    let inner_in_achievable = inner
        .vertices
        .iter()
        .all(|&v| contains(&achievable, v, 1e-6));
    let achievable_in_outer = achievable
        .vertices
        .iter()
        .all(|&v| contains(&outer, v, 1e-6));
    let pass = erode_in_inner && inner_in_achievable && achievable_in_outer;

    let gap_achievable = max_gap(&outer, &achievable);
    let report = json!({
        "command": "gap",
        "channel_digest": io::digest_file(&args.channel)?,
        "n1": ch.n1,
        "n2": ch.n2,
        "bound_bits": bound,
        "gap_outer_achievable": gap_achievable,
        "gap_outer_guaranteed": max_gap(&outer, &inner),
        "sandwich": {
            "erode_in_guaranteed": erode_in_inner,
            "guaranteed_in_achievable": inner_in_achievable,
            "achievable_in_outer": achievable_in_outer,
        },
        "pass": pass,
        "wall_time_ms": started.elapsed().as_secs_f64() * 1e3,
    });
    io::write_json(&args.out, &report)?;
    println!(
        "gap(outer, achievable) = {gap_achievable:.6} bits (bound {bound}); sandwich {}",
        if pass { "pass" } else { "FAIL" }
    );
    if pass {
        Ok(())
    } else {
        Err(CliError::failure("sandwich property violated"))
    }
}

fn cmd_dof(args: &DofArgs) -> Result<(), CliError> {
    if args.m1 == 0 || args.n1 == 0 || args.m2 == 0 || args.n2 == 0 {
        return Err(CliError::usage("antenna counts must be at least 1"));
    }
    if args.beta12 < 0.0 || args.beta21 < 0.0 || !args.beta12.is_finite() || !args.beta21.is_finite()
    {
        return Err(CliError::usage("backhaul exponents must be finite and nonnegative"));
    }
    let spec = DofSpec {
        m1: args.m1,
        n1: args.n1,
        m2: args.m2,
        n2: args.n2,
        beta12: args.beta12,
        beta21: args.beta21,
    };
    let region = dof_region(&spec);
    let constraints = dof_constraints(&spec);
    let report = json!({
        "command": "dof",
        "spec": { "m1": args.m1, "n1": args.n1, "m2": args.m2, "n2": args.n2,
                   "beta12": args.beta12, "beta21": args.beta21 },
        "constraints": constraints.iter().map(io::constraint_to_json).collect::<Vec<_>>(),
        "region": io::region_to_json(&region),
    });
    io::write_json(&args.out, &report)?;
    println!(
        "wrote DoF region ({} vertices) to {}",
        region.vertices.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_gdof(args: &GdofArgs) -> Result<(), CliError> {
    if args.m == 0 {
        return Err(CliError::usage("--m must be at least 1"));
    }
    if args.alpha < 0.0 || args.beta < 0.0 || !args.alpha.is_finite() || !args.beta.is_finite() {
        return Err(CliError::usage("--alpha and --beta must be finite and nonnegative"));
    }
    let spec = GdofSpec {
        m: args.m,
        alpha: args.alpha,
        beta: args.beta,
    };
    let value = gdof_value(&spec);
    let region = gdof_region(&spec);
    let report = json!({
        "command": "gdof",
        "spec": { "m": args.m, "alpha": args.alpha, "beta": args.beta },
        "gdof": value,
        "region": io::region_to_json(&region),
    });
    io::write_json(&args.out, &report)?;
    println!(
        "GDoF(M={}, alpha={}, beta={}) = {}",
        args.m, args.alpha, args.beta, value
    );
    Ok(())
}

fn cmd_gdof_curve(args: &GdofCurveArgs) -> Result<(), CliError> {
    if args.m == 0 {
        return Err(CliError::usage("--m must be at least 1"));
    }
    if !(args.step > 0.0) || args.alpha_max < args.alpha_min || args.alpha_min < 0.0 {
        return Err(CliError::usage("need 0 <= alpha-min <= alpha-max and step > 0"));
    }
    if args.beta < 0.0 || !args.beta.is_finite() {
        return Err(CliError::usage("--beta must be finite and nonnegative"));
    }
    let count = ((args.alpha_max - args.alpha_min) / args.step).round() as usize;
    let grid: Vec<f64> = (0..=count)
        .map(|k| args.alpha_min + k as f64 * args.step)
        .collect();
    let mut csv = String::from("alpha,gdof\n");
    for (alpha, g) in gdof_curve(args.m, args.beta, &grid) {
        csv.push_str(&format!(
            "{},{}\n",
            io::format_sig12(alpha),
            io::format_sig12(g)
        ));
    }
    std::fs::write(&args.out, csv)
        .map_err(|e| CliError::failure(format!("cannot write {}: {e}", args.out.display())))?;
    println!("wrote {} curve points to {}", count + 1, args.out.display());
    Ok(())
}

fn cmd_slopes(args: &SlopesArgs) -> Result<(), CliError> {
    let (lo, hi) = parse_decades(&args.snr_decades)?;
    let points: Vec<f64> = (0..=((hi - lo).round() as usize))
        .map(|k| 10f64.powf(lo + k as f64))
        .collect();
    let estimates = empirical_slope(
        (args.m1, args.n1, args.m2, args.n2),
        args.seed,
        args.alpha,
        args.beta,
        &points,
    )
    .map_err(|e| match e {
        mimoic_core::Error::InvalidSpec => CliError::usage(
            "no predicted prelog for unequal antennas with alpha != 1".to_string(),
        ),
        other => CliError::failure(format!("sweep failed: {other}")),
    })?;
    let rows: Vec<Value> = estimates
        .iter()
        .map(|e| {
            json!({
                "term": e.term,
                "predicted": e.predicted,
                "estimated": e.estimated,
                "abs_err": e.abs_err,
            })
        })
        .collect();
    io::write_json(&args.out, &Value::Array(rows))?;
    let worst = estimates.iter().map(|e| e.abs_err).fold(0.0, f64::max);
    println!(
        "wrote slope report to {}; worst |error| = {worst:.4}",
        args.out.display()
    );
    Ok(())
}

fn cmd_validate(args: &ValidateArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let cfg = validate::ValidateConfig {
        trials: args.trials,
        seed: args.seed,
        max_antennas: args.max_antennas.clamp(1, 4),
        snr_decades: parse_decades(&args.snr_decades)?,
        inject_fault: args.inject_fault,
    };
    let (results, warnings) = validate::run(&cfg);
    let pass = results.iter().all(|r| r.failures == 0);
    for r in &results {
        println!(
            "{:<24} {:>6} checked, {:>3} failed",
            r.name, r.checked, r.failures
        );
    }
    for w in &warnings {
        println!("warning: {w}");
    }
    if let Some(out) = &args.out {
        let report = json!({
            "command": "validate",
            "trials": args.trials,
            "seed": args.seed,
            "max_antennas": cfg.max_antennas,
            "properties": results.iter().map(|r| json!({
                "name": r.name,
                "checked": r.checked,
                "failures": r.failures,
            })).collect::<Vec<_>>(),
            "warnings": warnings,
            "pass": pass,
            "wall_time_ms": started.elapsed().as_secs_f64() * 1e3,
        });
        io::write_json(out, &report)?;
    }
    if pass {
        println!("all properties pass");
        Ok(())
    } else {
        Err(CliError::failure("property suite failed"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::GenChannel(args) => cmd_gen_channel(args),
        Command::Region(args) => cmd_region(args),
        Command::Gap(args) => cmd_gap(args),
        Command::Dof(args) => cmd_dof(args),
        Command::Gdof(args) => cmd_gdof(args),
        Command::GdofCurve(args) => cmd_gdof_curve(args),
        Command::Slopes(args) => cmd_slopes(args),
        Command::Validate(args) => cmd_validate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
