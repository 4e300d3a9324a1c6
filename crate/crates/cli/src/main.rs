//! `threepi` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 unparseable state,
//! 3 wrong dimensions, 4 usage error.

mod output;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use threepi::monogamy::{classify_slocc, random_verification_campaign, DEFAULT_SLOCC_TOL};
use threepi::states::parse_ket;
use threepi::sweep::{sweep_ghzw, sweep_w};
use threepi::{Check, Error, PureState, Sign};

use output::{write_rows, Format};
use report::{measure_rows, VerifyRow};

const EXIT_VERIFY: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DIMENSION: u8 = 3;
const EXIT_USAGE: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "threepi",
    version,
    about = "Negativity-based three-tangle toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to PATH instead of standard output.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct StateArgs {
    /// Named state.
    #[arg(long, value_enum)]
    state: Option<NamedState>,
    /// Ket expression, e.g. "0.6|000> + 0.8|111>".
    #[arg(long, allow_hyphen_values = true)]
    expr: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NamedState {
    Ghz,
    W,
    Bell,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Negativities, three-π and three-tangle of one state.
    Measure {
        #[command(flatten)]
        state: StateArgs,
        /// Rescale the expression to unit norm.
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Three-π over the W-class simplex.
    SweepW {
        /// Grid points per axis.
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(2..))]
        resolution: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Three-π, three-tangle and N²_A(BC) along √p|GHZ> ± √(1-p)|W>.
    SweepGhzw {
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Sign,
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(2..))]
        p_steps: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Seeded random verification campaign. Exits 1 on any violation.
    Verify {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated subset of monogamy,n_le_c,domination,povm,lu.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        checks: Vec<Check>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// SLOCC class of a three-qubit state.
    Classify {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        normalize: bool,
        /// Purity threshold on the single-qubit marginals.
        #[arg(long, default_value_t = DEFAULT_SLOCC_TOL, value_parser = parse_tol)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        _ => Err(format!("expected + or -, got '{s}'")),
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(format!("expected a positive number, got '{s}'")),
    }
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } | Error::ZeroVector | Error::NotNormalized { .. } => EXIT_PARSE,
            Error::MixedQubitCounts { .. }
            | Error::WrongQubitCount { .. }
            | Error::TooFewQubits { .. }
            | Error::DimensionMismatch { .. }
            | Error::WrongLength { .. }
            | Error::IndexOutOfRange { .. } => EXIT_DIMENSION,
            Error::OutOfRange { .. } => EXIT_USAGE,
            _ => EXIT_VERIFY,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("cannot write output: {e}"),
        }
    }
}

fn load_state(args: &StateArgs, normalize: bool) -> Result<PureState, Failure> {
    match (&args.state, &args.expr) {
        (Some(NamedState::Ghz), _) => Ok(PureState::ghz(3)?),
        (Some(NamedState::W), _) => Ok(PureState::w()),
        (Some(NamedState::Bell), _) => Ok(PureState::bell()),
        (None, Some(expr)) => Ok(parse_ket(expr, normalize)?),
        (None, None) => unreachable!("clap requires one of --state or --expr"),
    }
}

fn open_output(out: &OutputArgs) -> Result<Box<dyn Write>, Failure> {
    Ok(match &out.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Measure {
            state,
            normalize,
            out,
        } => {
            let rows = measure_rows(&load_state(&state, normalize)?)?;
            write_rows(&rows, out.format, open_output(&out)?)?;
        }
        Command::SweepW { resolution, out } => {
            let rows = sweep_w(resolution as usize)?;
            write_rows(&rows, out.format, open_output(&out)?)?;
        }
        Command::SweepGhzw { sign, p_steps, out } => {
            let rows = sweep_ghzw(sign, p_steps as usize)?;
            write_rows(&rows, out.format, open_output(&out)?)?;
        }
        Command::Verify {
            samples,
            seed,
            mut checks,
            out,
        } => {
            if checks.is_empty() {
                checks = Check::ALL.to_vec();
            }
            let stats = random_verification_campaign(samples as usize, seed, &checks)?;
            write_rows(&[VerifyRow::from(&stats)], out.format, open_output(&out)?)?;
            if stats.violations > 0 {
                return Ok(EXIT_VERIFY);
            }
        }
        Command::Classify {
            state,
            normalize,
            tol,
            out,
        } => {
            let class = classify_slocc(&load_state(&state, normalize)?, tol)?;
            let mut w = open_output(&out)?;
            match out.format {
                Format::Csv => writeln!(w, "{class}")?,
                Format::JsonLines => {
                    writeln!(w, "{}", serde_json::json!({ "class": class.label() }))?
                }
            }
            w.flush()?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
