//! `superanalysis` command-line interface.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 on usage, parse or I/O errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superanalysis::exec::Execution;

/// Fixed default seed for every randomized command.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(name = "superanalysis", version, about = "Function theory on commutative superalgebras: algebra checks, kernels and integral representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure-table checks, square roots of -1 and complex structures.
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Kernel evaluation.
    #[command(subcommand)]
    Kernel(KernelCommand),
    /// Reproduce a qS polynomial at a point from its values on a sphere.
    Reproduce(ReproduceArgs),
    /// Expansion of qS polynomials in real coordinates.
    #[command(subcommand)]
    Series(SeriesCommand),
    /// Run the acceptance battery and write a CSV summary.
    Suite(SuiteArgs),
}

#[derive(Subcommand)]
enum AlgebraCommand {
    /// Validate the axioms and optionally the (A0)/(A1) conditions.
    Verify(VerifyArgs),
    /// Newton search for a central even square root of -1.
    FindI(FindIArgs),
    /// Pair the basis into (b, i b) using a square root of -1.
    Complexify(FindIArgs),
}

#[derive(Subcommand)]
enum KernelCommand {
    /// Evaluate the full kernel at seeded points with a finite-difference
    /// closedness residual.
    Sample(KernelArgs),
}

#[derive(Subcommand)]
enum SeriesCommand {
    /// Print the real-coordinate expansion of a qS polynomial.
    Expand(SeriesArgs),
    /// Expand and recover the polynomial; passes when the roundtrip is exact.
    Roundtrip(SeriesArgs),
}

#[derive(Args, Clone)]
pub struct AlgebraSource {
    /// Algebra definition file (`p`, `q`, `gamma i j k value` records).
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    pub algebra: Option<PathBuf>,
    /// Built-in algebra: complex, hyperbolic, example3, complex_grassmann:<g>.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Args, Clone)]
pub struct SpaceArgs {
    #[command(flatten)]
    pub source: AlgebraSource,
    /// Number of even hypervariables.
    #[arg(long)]
    pub n: usize,
    /// Number of odd hypervariables.
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Slice file (`breakpoints`, `multiplier` records); built-ins have defaults.
    #[arg(long)]
    pub slices: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Numeric {
    Exact,
    Float,
}

#[derive(Args)]
pub struct OutArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: AlgebraSource,
    /// Even basis file (`vector` records) for (A0).
    #[arg(long, conflicts_with = "a0_default")]
    pub a0: Option<PathBuf>,
    /// Check (A0) on the table's own even basis.
    #[arg(long)]
    pub a0_default: bool,
    /// Slice file for (A1).
    #[arg(long, conflicts_with = "a1_default")]
    pub a1: Option<PathBuf>,
    /// Check (A1) with the built-in slice specification.
    #[arg(long)]
    pub a1_default: bool,
    #[arg(long, value_enum, default_value = "exact")]
    pub numeric: Numeric,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args)]
pub struct FindIArgs {
    #[command(flatten)]
    pub source: AlgebraSource,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of random Newton starts.
    #[arg(long, default_value_t = 64)]
    pub starts: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Number of points drawn uniformly from the shell 0.5 <= |x| <= 2.
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-4)]
    pub step: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args)]
pub struct ReproduceArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Polynomial file (`coef <I> <J_1> ... <J_r> <coefficients>` records).
    #[arg(long)]
    pub f: PathBuf,
    /// Ball center as comma-separated real coordinates (default: origin).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub center: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Evaluation point (default: the center).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub at: Option<Vec<f64>>,
    /// Monte-Carlo samples, or nodes for the circle trapezoid rule.
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// monte_carlo, or circle_trapezoid when the sphere is a circle.
    #[arg(long, default_value = "monte_carlo")]
    pub method: String,
    #[arg(long, default_value = "parallel")]
    pub execution: Execution,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Polynomial file.
    #[arg(long)]
    pub f: PathBuf,
    /// Expansion center as comma-separated real coordinates (default: origin).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub center: Option<Vec<String>>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args)]
pub struct SuiteArgs {
    /// Run a single criterion, by number or name (e.g. kernel-closedness).
    #[arg(long)]
    pub only: Option<String>,
    #[arg(long, default_value = "parallel")]
    pub execution: Execution,
    #[command(flatten)]
    pub out: OutArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Algebra(AlgebraCommand::Verify(a)) => commands::verify(&a),
        Command::Algebra(AlgebraCommand::FindI(a)) => commands::find_i(&a),
        Command::Algebra(AlgebraCommand::Complexify(a)) => commands::complexify(&a),
        Command::Kernel(KernelCommand::Sample(a)) => commands::kernel_sample(&a),
        Command::Reproduce(a) => commands::reproduce(&a),
        Command::Series(SeriesCommand::Expand(a)) => commands::series(&a, false),
        Command::Series(SeriesCommand::Roundtrip(a)) => commands::series(&a, true),
        Command::Suite(a) => commands::suite(&a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
