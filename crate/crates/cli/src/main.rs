//! `oc-mirror`: compute and check the open/closed correspondence for the
//! equivariant projective line on a truncation window.
//!
//! Exit codes: 0 on success or a passing check, 1 when a check fails, 2 on
//! usage or configuration errors.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Hard cap on the localization degree; graph counts grow too fast beyond.
pub const MAX_LOCALIZE_DEGREE: u32 = 3;

#[derive(Parser, Debug)]
#[command(name = "oc-mirror", version, about = "Exact open/closed mirror computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficients of the disk potential F.
    Disk(TableArgs),
    /// The closed side: paired z⁻² coefficient of the I-function plus Exc.
    Rhs(RhsArgs),
    /// Compare both sides monomial by monomial.
    Check(CheckArgs),
    /// Localization graph classes and their contributions.
    Localize(LocalizeArgs),
    /// z⁻ᵐ coefficients of the restricted I-function.
    Ifunction(IfunctionArgs),
    /// Ratio table for the 1/v asymptotic series of the second component.
    Asymptotics(AsymptoticsArgs),
}

#[derive(Args, Debug, Clone)]
pub struct WindowArgs {
    /// Largest total power of Q.
    #[arg(long, default_value_t = 10)]
    pub max_q: u32,
    /// Largest power of t⁰.
    #[arg(long, default_value_t = 4)]
    pub max_t: u32,
    /// Largest |winding number|.
    #[arg(long, default_value_t = 4)]
    pub max_mu: u32,
    /// Smallest power of v.
    #[arg(long, default_value_t = -8, allow_hyphen_values = true)]
    pub min_v: i32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub window: WindowArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct RhsArgs {
    #[command(flatten)]
    pub window: WindowArgs,
    /// Leave out the exceptional term.
    #[arg(long)]
    pub no_exc: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub window: WindowArgs,
    /// Flip the sign of one exceptional monomial (mutation testing).
    #[arg(long, hide = true)]
    pub corrupt_exc: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct LocalizeArgs {
    #[arg(long)]
    pub degree: u32,
    /// Number of marked points, each carrying the class given by --class.
    #[arg(long, default_value_t = 0)]
    pub markings: usize,
    /// Insertion class at every marking: 1, H, phi1 or phi2.
    #[arg(long, default_value = "1")]
    pub class: String,
    /// ψ exponent at every marking.
    #[arg(long, default_value_t = 0)]
    pub psi: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct IfunctionArgs {
    /// m in [z⁻ᵐ].
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub zcoeff: i32,
    #[command(flatten)]
    pub window: WindowArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    First,
    Second,
}

#[derive(Args, Debug)]
pub struct AsymptoticsArgs {
    #[arg(long, default_value_t = 1.0)]
    pub q0: f64,
    #[arg(long, default_value_t = 0.25)]
    pub q1: f64,
    #[arg(long, default_value_t = 0.25)]
    pub q2: f64,
    #[arg(long, default_value_t = 1.0)]
    pub z: f64,
    /// Number of subtracted asymptotic terms; repeatable.
    #[arg(long = "N", default_values_t = [1u32])]
    pub n: Vec<u32>,
    /// Index l of v_l = (l + 1/2) z; repeatable.
    #[arg(long = "l", default_values_t = [50u32, 100, 200, 400])]
    pub l: Vec<u32>,
    /// Evaluate the first component instead, by q1 ↔ q2 and v ↦ -v.
    #[arg(long, value_enum, default_value_t = BranchArg::Second)]
    pub branch: BranchArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// A failure mapped to an exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    CheckFailed,
}

impl From<oc_mirror::Error> for Failure {
    fn from(e: oc_mirror::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("OC_MIRROR_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("OC_MIRROR_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_threads().and_then(|()| commands::run(cli.command));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::CheckFailed) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
