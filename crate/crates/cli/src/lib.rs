//! `dyadic` command line: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 success, 1 output could not be written, 2 invalid input,
//! 3 numerical non-convergence, 64 usage error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod experiment;
pub mod io;

pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NON_CONVERGENCE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    NonConvergence(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::NonConvergence(_) => EXIT_NON_CONVERGENCE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::NonConvergence(m) => write!(f, "did not converge: {m}"),
            CliError::Io(m) => write!(f, "cannot write output: {m}"),
        }
    }
}

impl From<dyadic_core::Error> for CliError {
    fn from(e: dyadic_core::Error) -> Self {
        match e {
            dyadic_core::Error::NonConvergence { .. } => CliError::NonConvergence(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "dyadic", version, about = "Dyadic product BMO, LMO, paraproducts and shifts at finite depth")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Haar transform of a function file, or its inverse.
    Haar(HaarArgs),
    /// Product BMO^d norm (squared) of the mean-zero part of a function.
    Bmo(BmoArgs),
    /// LMO^d norms: Q_j definition, log-weighted characterization, one direction, mixed β.
    Lmo(LmoArgs),
    /// Apply the paraproduct Π^β with symbol --symbol to --input.
    Paraproduct(ParaproductArgs),
    /// L² operator norm of a named operator.
    Opnorm(OpnormArgs),
    /// σ_k of the mean-zero part of a function.
    Sigma(SigmaArgs),
    /// Iterated shift commutator [S⁽¹⁾,[S⁽²⁾,M_φ]]b, or the nine-part norm report.
    Commutator(CommutatorArgs),
    /// Hilbert transform of a step function by averaged shifts, or in closed form.
    Hilbert(HilbertArgs),
    /// Deterministic experiment tables (CSV).
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
struct Output {
    /// Output path; written atomically. Defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct HaarArgs {
    #[arg(long, conflicts_with = "inverse", required_unless_present = "inverse")]
    forward: bool,
    #[arg(long)]
    inverse: bool,
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BmoMethod {
    Exact,
    Brute,
    Rect,
}

#[derive(Debug, Args)]
struct BmoArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    method: BmoMethod,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LmoMethod {
    Def,
    Char,
    Dir,
    Beta,
}

#[derive(Debug, Args)]
struct LmoArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "def")]
    method: LmoMethod,
    /// Axis (1 or 2) for `--method dir`.
    #[arg(long)]
    axis: Option<u8>,
    /// β as `b1,b2` with entries 0 or 1, for `--method beta`.
    #[arg(long, value_parser = parse_bits)]
    beta: Option<[u8; 2]>,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct ParaproductArgs {
    /// β as `b1,b2`: 0,0 is Π, 1,1 is Δ.
    #[arg(long, value_parser = parse_bits)]
    beta: [u8; 2],
    /// Symbol φ as a function file.
    #[arg(long)]
    symbol: PathBuf,
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct OpnormArgs {
    /// shift1, shift2, multiply, pi, delta, pi01, pi10, commutator, or a
    /// nine-part name (Pi, Delta, Pi01, Pi10, R_R, Pi_R, Delta_R, R_Pi, R_Delta).
    operator: String,
    /// Symbol φ; required by every operator except the shifts.
    #[arg(long)]
    symbol: Option<PathBuf>,
    /// Depth for the shifts, `J` or `J1,J2`.
    #[arg(long, value_parser = parse_depth)]
    depth: Option<[usize; 2]>,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct SigmaArgs {
    #[arg(long)]
    input: PathBuf,
    /// Generation `k1,k2`.
    #[arg(long, value_parser = parse_pair)]
    k: [usize; 2],
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CommutatorMode {
    Dyadic,
    Report,
}

#[derive(Debug, Args)]
struct CommutatorArgs {
    #[arg(value_enum)]
    mode: CommutatorMode,
    #[arg(long)]
    symbol: PathBuf,
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HilbertMode {
    Mc,
    Oracle,
}

#[derive(Debug, Args)]
struct HilbertArgs {
    #[arg(value_enum)]
    mode: HilbertMode,
    /// Step function `{"breakpoints": [...], "values": [...]}`; defaults to χ_[0,1).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Evaluation points, comma separated.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    x: Vec<f64>,
    #[arg(long, default_value_t = 4000)]
    samples: usize,
    /// Required for `mc`.
    #[arg(long)]
    seed: Option<u64>,
    /// Coarsest and finest grid level K of the truncated shifts.
    #[arg(long)]
    k: Option<u32>,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentName {
    Growth,
    ParaproductBound,
    LemmaCore,
    NinePart,
    CommutatorBound,
    LmoEquivalence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundMethod {
    Sufficiency,
    Necessity,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[arg(value_enum)]
    name: ExperimentName,
    /// `J` or `J1,J2`; for `growth` the largest square depth.
    #[arg(long, value_parser = parse_depth, default_value = "2")]
    depth: [usize; 2],
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    /// Overrides the constant or tolerance the experiment asserts.
    #[arg(long)]
    tolerance: Option<f64>,
    /// `sufficiency` or `necessity`, for `paraproduct-bound`.
    #[arg(long, value_enum, default_value = "sufficiency")]
    method: BoundMethod,
    #[command(flatten)]
    out: Output,
}

fn parse_pair(s: &str) -> Result<[usize; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok([a.parse().map_err(|e| format!("{e}"))?, b.parse().map_err(|e| format!("{e}"))?]),
        _ => Err(format!("expected two comma-separated integers, got {s:?}")),
    }
}

fn parse_depth(s: &str) -> Result<[usize; 2], String> {
    match s.trim().parse::<usize>() {
        Ok(j) => Ok([j, j]),
        Err(_) => parse_pair(s),
    }
}

fn parse_bits(s: &str) -> Result<[u8; 2], String> {
    let [a, b] = parse_pair(s)?;
    if a > 1 || b > 1 {
        return Err(format!("entries must be 0 or 1, got {s:?}"));
    }
    Ok([a as u8, b as u8])
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidValue | ErrorKind::ValueValidation => EXIT_VALIDATION,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("dyadic: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Haar(a) => commands::haar(&a),
        Command::Bmo(a) => commands::bmo(&a),
        Command::Lmo(a) => commands::lmo(&a),
        Command::Paraproduct(a) => commands::paraproduct(&a),
        Command::Opnorm(a) => commands::opnorm(&a),
        Command::Sigma(a) => commands::sigma(&a),
        Command::Commutator(a) => commands::commutator(&a),
        Command::Hilbert(a) => commands::hilbert(&a),
        Command::Experiment(a) => experiment::run(&a),
    }
}
