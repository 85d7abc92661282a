//! `tricover`: command-line front end for the period and theta toolkit.
//!
//! Exit status 0 when every check passes, 1 when a mathematical check fails, 2 on bad input.

mod commands;
mod parse;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tricover::suites::{Suite, SuiteConfig};
use tricover::theta::ThetaConfig;
use tricover::Error;

use commands::{checks_value, is_input_error, Outcome};
use report::Table;

#[derive(Parser, Debug)]
#[command(name = "tricover", version, about = "Periods, theta constants and monodromy of the triple covers w^3 = prod(z - l_i)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation error target for theta sums
    #[arg(long, global = true, default_value_t = 1e-12)]
    eps: f64,
    /// Relative tolerance for quadrature
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ball point x to the period matrix j(x)
    Embed(PointArgs),
    /// All 81 labelled theta constants at j(x), with tail bounds
    Theta(PointArgs),
    /// Theta cubes, the point y and the cross-ratios l at j(x)
    Invert(PointArgs),
    /// Branch points to A- and B-periods, rho-twist and the full period matrix
    Forward(LambdaArgs),
    /// Compare Theta(psi(lambda)) with the Pluecker point of lambda
    Roundtrip(LambdaArgs),
    /// Run an invariant suite
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Four complex coordinates "re,im;re,im;re,im;re,im"
    #[arg(long, allow_hyphen_values = true)]
    x: String,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct LambdaArgs {
    /// Six increasing reals "l1,l2,l3,l4,l5,l6"
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// File with one comma-separated sextuple per line
    #[arg(long)]
    lambda_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// group, characteristics, vanishing, relations, invariance, equivariance, mirror, quadrature, forward or roundtrip
    #[arg(long)]
    suite: String,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if is_input_error(&e) {
            Failure::Usage(e.to_string())
        } else {
            Failure::Math(e.to_string())
        }
    }
}

fn lambdas(a: &LambdaArgs) -> Result<Vec<[f64; 6]>, Failure> {
    match (&a.lambda, &a.lambda_file) {
        (Some(s), _) => Ok(vec![parse::sextuple(s).map_err(Failure::Usage)?]),
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
            parse::sextuples(&text).map_err(Failure::Usage)
        }
        (None, None) => Err(Failure::Usage("one of --lambda or --lambda-file is required".into())),
    }
}

fn run(cli: &Cli, header: &mut Table) -> Result<Outcome, Failure> {
    for (name, v) in [("eps", cli.eps), ("tol", cli.tol)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Failure::Usage(format!("--{name} must be a positive number, got {v}")));
        }
    }
    let cfg = ThetaConfig::with_eps(cli.eps);
    let point = |a: &PointArgs| parse::ball_coords(&a.x).map_err(Failure::Usage);
    Ok(match &cli.command {
        Command::Embed(a) => commands::embed(&point(a)?)?,
        Command::Theta(a) => commands::theta(&point(a)?, &cfg)?,
        Command::Invert(a) => commands::invert(&point(a)?, &cfg)?,
        Command::Forward(a) => commands::forward(&lambdas(a)?, cli.tol)?,
        Command::Roundtrip(a) => commands::roundtrip_all(&lambdas(a)?, cli.tol, &cfg)?,
        Command::Verify(a) => {
            let suite = Suite::from_name(&a.suite).map_err(|e| Failure::Usage(e.to_string()))?;
            let samples = a.samples.unwrap_or(suite.default_samples());
            header.set("suite", suite.name()).set("samples", samples).set("seed", a.seed);
            commands::verify(suite, &SuiteConfig { samples: Some(samples), seed: a.seed, eps: cli.eps, tol: cli.tol })?
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Embed(_) => "embed",
        Command::Theta(_) => "theta",
        Command::Invert(_) => "invert",
        Command::Forward(_) => "forward",
        Command::Roundtrip(_) => "roundtrip",
        Command::Verify(_) => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut doc = Table::new().with("command", command_name(&cli.command)).with("eps", cli.eps).with("tol", cli.tol);
    let (code, failed) = match run(&cli, &mut doc) {
        Ok(out) => {
            let failed: Vec<String> = out.checks.iter().filter(|c| !c.passed && !c.stretch).map(|c| c.name.clone()).collect();
            doc.set("status", if failed.is_empty() { "pass" } else { "fail" });
            doc.set("failed", failed.clone());
            doc.set("result", out.body);
            doc.set("checks", checks_value(&out.checks));
            (if failed.is_empty() { 0 } else { 1 }, failed)
        }
        Err(Failure::Math(msg)) => {
            doc.set("status", "fail").set("failed", vec![msg.clone()]);
            (1, vec![msg])
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let text = doc.render();
    match &cli.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    for f in &failed {
        eprintln!("check failed: {f}");
    }
    ExitCode::from(code)
}
