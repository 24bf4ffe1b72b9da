//! `flagg` — compute factorial flagged Grothendieck polynomials by three
//! independent methods, analyze permutations, and run verification suites.
//!
//! Exit codes: 0 success / all equal; 1 verification or comparison
//! mismatch; 2 invalid input; 3 internal-consistency violation.

mod commands;
mod jobspec;
mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "flagg",
    version,
    about = "Factorial flagged Grothendieck polynomials: tableaux, determinants, divided differences",
    args_conflicts_with_subcommands = true
)]
pub struct Cli {
    /// Read the whole job from a JSON file instead of flags.
    #[arg(long, value_name = "PATH")]
    pub spec: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand)]
pub enum Command {
    /// List the flagged set-valued tableaux of a shape.
    Tableaux(TableauxArgs),
    /// Compute the polynomial of a shape or permutation by one method.
    Compute(ComputeArgs),
    /// Run all three pipelines on a shape and compare the results.
    Compare(CompareArgs),
    /// Analyze a permutation: pattern status, diagram, shape, polynomial.
    Perm(PermArgs),
    /// Run a verification suite and report pass/fail counts.
    Verify(VerifyArgs),
}

/// Comma-separated list of non-negative integers, e.g. `3,1`.
#[derive(Clone, Debug)]
pub struct U32List(pub Vec<u32>);

impl std::str::FromStr for U32List {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_u32_list(s).map(U32List)
    }
}

#[derive(Args)]
pub struct ShapeArgs {
    /// Partition as a comma-separated list, e.g. `3,1`.
    #[arg(long, value_name = "PARTS")]
    pub shape: Option<U32List>,

    /// Flag as a comma-separated list of the same length, e.g. `2,4`.
    #[arg(long, value_name = "BOUNDS")]
    pub flag: Option<U32List>,
}

#[derive(Args)]
pub struct TableauxArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,

    /// Permutation in one-line notation, e.g. `2,1,4,3` (alternative to
    /// --shape/--flag; must be 2143-avoiding).
    #[arg(long, value_name = "ONE_LINE", conflicts_with_all = ["shape", "flag"])]
    pub perm: Option<String>,

    /// Computation method.
    #[arg(long, value_enum, default_value_t = Method::Tableau)]
    pub method: Method,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Variable assignments applied before printing, e.g. `beta=0`, `b=0`,
    /// `x1=2` (repeatable).
    #[arg(long = "set", value_parser = parse_setting, value_name = "VAR=INT")]
    pub settings: Vec<Setting>,

    /// Extra truncation degree for the determinant method (stability audit).
    #[arg(long, default_value_t = 0, value_name = "K")]
    pub trunc_margin: u32,
}

#[derive(Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,

    /// Extra truncation degree for the determinant stage.
    #[arg(long, default_value_t = 0, value_name = "K")]
    pub trunc_margin: u32,
}

#[derive(Args)]
pub struct PermArgs {
    /// Permutation in one-line notation, e.g. `2,1,4,3`.
    #[arg(long, value_name = "ONE_LINE")]
    pub perm: String,

    /// Also print the double Grothendieck polynomial of the permutation.
    #[arg(long)]
    pub polynomial: bool,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Which suite to run.
    #[arg(long, value_enum)]
    pub suite: Suite,

    /// Grid limit: maximum number of rows.
    #[arg(long, default_value_t = 3, value_name = "R")]
    pub max_rows: u32,

    /// Grid limit: maximum part size.
    #[arg(long, default_value_t = 3, value_name = "P")]
    pub max_part: u32,

    /// Grid limit: maximum flag value.
    #[arg(long, default_value_t = 4, value_name = "F")]
    pub max_flag: u32,

    /// Symmetric-group size for the vexillary suite.
    #[arg(long, default_value_t = 4, value_name = "N")]
    pub n: u32,

    /// Abort (as a failure) when the suite exceeds this many seconds.
    #[arg(long, value_name = "SECS")]
    pub time_budget: Option<u64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Tableau,
    Determinant,
    Divdiff,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Operators,
    Main,
    Vexillary,
    Divdiff,
    Degenerations,
}

/// A single `--set` assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Setting {
    Beta(i64),
    AllX(i64),
    AllB(i64),
    X(u32, i64),
    B(u32, i64),
}

fn parse_u32_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| format!("`{part}` is not a non-negative integer"))
        })
        .collect()
}

fn parse_setting(s: &str) -> Result<Setting, String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("`{s}` is not of the form VAR=INT"))?;
    let value: i64 = value
        .trim()
        .parse()
        .map_err(|_| format!("`{value}` is not an integer"))?;
    let name = name.trim();
    match name {
        "beta" => Ok(Setting::Beta(value)),
        "x" => Ok(Setting::AllX(value)),
        "b" => Ok(Setting::AllB(value)),
        _ => {
            if let Some(idx) = name.strip_prefix('x') {
                let i: u32 = idx.parse().map_err(|_| format!("bad variable `{name}`"))?;
                Ok(Setting::X(i, value))
            } else if let Some(idx) = name.strip_prefix('b') {
                let j: u32 = idx.parse().map_err(|_| format!("bad variable `{name}`"))?;
                Ok(Setting::B(j, value))
            } else {
                Err(format!(
                    "unknown variable `{name}` (expected beta, x, b, x<i> or b<j>)"
                ))
            }
        }
    }
}

/// Outcome of a command: the process exit code.
pub enum Outcome {
    Success,
    Mismatch,
}

/// Invalid input (exit 2) or internal inconsistency (exit 3), with the
/// message printed to standard error.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<flagg::Error> for Failure {
    fn from(e: flagg::Error) -> Self {
        let code = match e {
            flagg::Error::InvalidArgument(_) | flagg::Error::Domain(_) => 2,
            flagg::Error::InternalConsistency(_) => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

pub type CmdResult = Result<Outcome, Failure>;

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Tableaux(args) => commands::tableaux(&args),
        Command::Compute(args) => commands::compute(&args),
        Command::Compare(args) => commands::compare(&args),
        Command::Perm(args) => commands::perm(&args),
        Command::Verify(args) => verify::run(&args),
    }
}

/// Dies quietly instead of panicking when stdout is closed early
/// (e.g. piping a large polynomial into `head`).
#[cfg(unix)]
fn restore_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn restore_sigpipe() {}

fn main() -> ExitCode {
    restore_sigpipe();
    let cli = Cli::parse();
    let command = match (cli.spec, cli.command) {
        (Some(path), None) => match jobspec::load(&path) {
            Ok(command) => command,
            Err(failure) => {
                eprintln!("error: {}", failure.message);
                return ExitCode::from(failure.code);
            }
        },
        (None, Some(command)) => command,
        (None, None) => {
            eprintln!("error: either a subcommand or --spec <PATH> is required");
            return ExitCode::from(2);
        }
        (Some(_), Some(_)) => unreachable!("clap rejects --spec with a subcommand"),
    };
    match dispatch(command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
