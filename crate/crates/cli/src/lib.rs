//! Command-line front end for stacklab: argument parsing, dispatch, file
//! formats and the reproduction suite.
//!
//! Exit codes: 0 on success, 1 when a verification or conversion fails, 2
//! on a usage error.

mod commands;
pub mod limits;
pub mod suite;
pub mod table;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use limits::{Limits, LimitsError};
use table::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Limits(#[from] LimitsError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Limits(_) => EXIT_USAGE,
            CliError::Failed(_) | CliError::Io(_) | CliError::Json(_) => EXIT_FAILED,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "stacklab", version, about = "Enumeration, generating functions and asymptotics of stack diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Shorthand for `--format json`.
    #[arg(long, conflicts_with = "format")]
    pub json: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl OutputArgs {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format.unwrap_or(Format::Plain)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GfName {
    Z,
    Zm,
    Rm,
    Exrna,
    Ti,
    G,
    H,
    Schroeder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reading {
    /// The structural displays taken literally.
    AsPrinted,
    /// `H = 1 - x + ...` and a squared `(1 - x T_4)` in the last identity term.
    Amended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    /// Every reproduction check.
    #[value(alias = "paper")]
    Reference,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the diagrams of a class by exhaustive search.
    Count {
        #[arg(long)]
        class: String,
        /// Regularity parameter; a comma-separated list prints one row per value.
        #[arg(long, value_delimiter = ',')]
        m: Vec<usize>,
        /// Only diagrams with exactly this many arcs.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: usize,
        /// Counts for every size from 1 to n instead of n alone.
        #[arg(long)]
        row: bool,
        /// With --row, one line per m and one column per n.
        #[arg(long, requires = "row")]
        wide: bool,
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Write every diagram of a class, one per line.
    Enumerate {
        #[arg(long)]
        class: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Shorten every arc of m-regular linear stacks by m - 1.
    Reduce {
        #[arg(long)]
        m: usize,
        #[arg(long = "in")]
        input: std::path::PathBuf,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Inverse of reduce.
    Expand {
        #[arg(long)]
        m: usize,
        #[arg(long = "in")]
        input: std::path::PathBuf,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Primary component, intervals, J-sets and interval types as JSON lines.
    Decompose {
        #[arg(long)]
        m: usize,
        #[arg(long = "in")]
        input: std::path::PathBuf,
    },
    /// Contact maps of square-lattice walks and their stack/queue splits.
    Contactmap {
        #[arg(long)]
        walks: std::path::PathBuf,
        #[arg(long)]
        emit_diagrams: Option<std::path::PathBuf>,
    },
    /// Coefficients of a generating function.
    Series {
        #[arg(long, value_enum)]
        gf: GfName,
        #[arg(long)]
        m: Option<usize>,
        /// Interval type index for `--gf ti`.
        #[arg(long)]
        i: Option<u8>,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "amended")]
        reading: Reading,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Linear ODE and P-recurrence of an algebraic generating function.
    Recurrence {
        #[arg(long, value_enum)]
        gf: GfName,
        #[arg(long)]
        m: Option<usize>,
        /// Derive from the algebraic equation (the default).
        #[arg(long, conflicts_with = "printed")]
        derive: bool,
        /// Use the printed zigzag recurrence.
        #[arg(long, alias = "paper")]
        printed: bool,
        /// Also print the first N terms computed by the recurrence.
        #[arg(long)]
        extend: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Dominant singularity and the constants of `gamma omega^n n^(-3/2)`.
    Asympt {
        #[arg(long, value_enum)]
        gf: GfName,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 20)]
        digits: usize,
        /// Coefficients used by the extrapolation cross-check (0 skips it).
        #[arg(long, default_value_t = 401)]
        terms: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run the reproduction checks and print a pass/fail table.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteName,
        /// Run only these check ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code. Output goes to `stdout`, diagnostics to `stderr`.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let result = Limits::from_env()
        .map_err(CliError::from)
        .and_then(|limits| commands::dispatch(cli.command, &limits, stdout, stderr));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    run_with(argv, &mut out, &mut err)
}
