//! Command-line front end: argument parsing, shared setup and the JSON
//! reports behind each subcommand.

use std::ffi::OsString;

use braidimg::gf::{FEl, FieldCtx, FieldSpec};
use braidimg::young::Partition;
use braidimg::Error;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

mod commands;
mod report;
mod verify;

pub use report::{Check, Status, Verdict};
pub use verify::{cmd_verify, ShapeReport, VerifyOptions, VerifyReport};

/// Version tag carried by every JSON report.
pub const SCHEMA: u32 = 1;

/// Exit code for a run where every check passed.
pub const EXIT_PASS: i32 = 0;
/// Exit code for invalid invocations and refused inputs.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for a mathematical mismatch or failed check.
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "braidimg",
    version,
    about = "Hecke algebra images of braid groups over finite fields"
)]
pub struct Cli {
    /// Log closure progress and other diagnostics to stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check for each partition of n and certify small images.
    Verify(VerifyArgs),
    /// Dump generator matrices of one representation as CSV.
    Rep(RepArgs),
    /// Invariant forms of one representation.
    Forms(ShapeArgs),
    /// Classification records for the non-hook shapes and [n-1,1].
    Classify(ClassifyArgs),
    /// Exhaustive closure of the commutator-subgroup image.
    Enumerate(EnumerateArgs),
    /// Conjugate a unitary-case image into the half-size field.
    Descend(DescendArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Field as p=<prime>,k=<degree>,mod=<c0,...,ck>|AUTO.
    #[arg(long, default_value = "p=2,k=3,mod=AUTO")]
    pub field: FieldSpec,
    /// Multiplicative order of α; defaults to q - 1.
    #[arg(long)]
    pub alpha_order: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Number of strands.
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Largest closure attempted, in elements.
    #[arg(long = "enumerate-cap", alias = "cap", default_value_t = braidimg::engine::DEFAULT_CAP)]
    pub cap: u64,
    /// Also run closures of more than a million elements.
    #[arg(long)]
    pub heavy: bool,
    /// Seed for the randomized searches.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ShapeArgs {
    /// Number of strands.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Partition as comma-separated parts; defaults to [n-1,1].
    #[arg(long)]
    pub lambda: Option<Partition>,
    #[command(flatten)]
    pub field: FieldArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RepArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Generator index; every generator when omitted.
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Seed for the randomized searches.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Closure size limit, in elements.
    #[arg(long, alias = "enumerate-cap", default_value_t = braidimg::engine::DEFAULT_CAP)]
    pub cap: u64,
}

#[derive(Debug, Clone, Args)]
pub struct DescendArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Seed for the randomized searches.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// What a command printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn json<T: Serialize>(value: &T, code: i32) -> Self {
        let mut stdout = serde_json::to_string_pretty(value).expect("reports serialize");
        stdout.push('\n');
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: msg.into(),
            code: EXIT_USAGE,
        }
    }
}

/// Field and `α` shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Setup {
    pub ctx: FieldCtx,
    pub alpha: FEl,
    pub alpha_order: u64,
}

impl FieldArgs {
    pub fn setup(&self) -> std::result::Result<Setup, String> {
        let ctx = FieldCtx::from_spec(&self.field).map_err(|e| format!("--field: {e}"))?;
        let alpha_order = self.alpha_order.unwrap_or(u64::from(ctx.q()) - 1);
        let alpha = ctx
            .find_element_of_order(alpha_order)
            .map_err(|e| format!("--alpha-order: {e}"))?;
        Ok(Setup {
            ctx,
            alpha,
            alpha_order,
        })
    }
}

impl ShapeArgs {
    pub fn shape(&self) -> std::result::Result<Partition, String> {
        match &self.lambda {
            Some(l) if l.n() != self.n => Err(format!(
                "--lambda: {l} is not a partition of --n {}",
                self.n
            )),
            Some(l) => Ok(l.clone()),
            None => Partition::lambda_zero(self.n).map_err(|e| format!("--n: {e}")),
        }
    }
}

/// Parameters echoed at the top of every report.
#[derive(Debug, Clone, Serialize)]
pub struct Parameters {
    pub n: usize,
    pub field: String,
    pub alpha: String,
    pub alpha_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<braidimg::classify::Case>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Parameters {
    pub fn new(n: usize, setup: &Setup, seed: Option<u64>) -> Self {
        Parameters {
            n,
            field: setup.ctx.spec().to_string(),
            alpha: setup.ctx.format(setup.alpha),
            alpha_order: setup.alpha_order,
            case: braidimg::classify::classify_case(&setup.ctx, setup.alpha).ok(),
            seed,
        }
    }
}

/// A refused request, reported as JSON.
#[derive(Debug, Serialize)]
struct Refusal<'a> {
    schema: u32,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    parameters: Option<Parameters>,
    verdict: Verdict,
    refusal: String,
}

fn refuse(command: &str, parameters: Option<Parameters>, err: &Error) -> Outcome {
    let mut out = Outcome::json(
        &Refusal {
            schema: SCHEMA,
            command,
            parameters,
            verdict: Verdict::Refused,
            refusal: err.to_string(),
        },
        EXIT_USAGE,
    );
    out.stderr = format!("{command}: {err}");
    out
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Verify(a) => verify::run(a),
        Command::Rep(a) => commands::rep(a),
        Command::Forms(a) => commands::forms(a),
        Command::Classify(a) => commands::classify(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Descend(a) => commands::descend(a),
    }
}

/// Parses `args` (program name first) and runs them. Parse failures exit with
/// [`EXIT_USAGE`]; `--help` and `--version` exit with 0.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) if !e.use_stderr() => Outcome {
            stdout: e.to_string(),
            stderr: String::new(),
            code: EXIT_PASS,
        },
        Err(e) => Outcome::usage(e.to_string()),
    }
}
