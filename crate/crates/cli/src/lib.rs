//! Command-line front end over `m0n-core`.

use std::ffi::OsString;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use m0n_core::Rational;

pub mod commands;
pub mod report;
pub mod table;

pub use report::{Outcome, Report, Status};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] m0n_core::Error),
    #[error("{0}")]
    Usage(String),
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    Rational::from_str(text).map_err(|e| e.to_string())
}

/// Inclusive range written `a:b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub end: usize,
}

fn parse_range(text: &str) -> Result<NRange, String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("expected a:b, got {text:?}"))?;
    let start = a.trim().parse().map_err(|_| format!("bad start {a:?}"))?;
    let end = b.trim().parse().map_err(|_| format!("bad end {b:?}"))?;
    if start > end {
        return Err(format!("empty range {text}"));
    }
    Ok(NRange { start, end })
}

#[derive(Debug, Parser)]
#[command(
    name = "m0n",
    version,
    about = "Symmetric divisors on M_0,n: F-nef checks, log canonical models, faces of the F-nef cone"
)]
pub struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print nothing; report through the exit code only.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the coefficients r_2..r_{n/2} of a divisor.
    Divisor(DivisorArgs),
    /// Test a divisor against every vital curve.
    Fnef(FnefArgs),
    /// Name the log canonical model for alpha.
    Model(ModelArgs),
    /// Run an exhaustive verification sweep.
    Verify(VerifyArgs),
    /// Faces of the F-nef cone, or the facet table.
    Cone(ConeArgs),
}

#[derive(Debug, Args)]
pub struct DivisorArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub source: DivisorSource,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DivisorSource {
    /// A_alpha for a rational p/q.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub alpha: Option<Rational>,
    /// The canonical class.
    #[arg(long)]
    pub canonical: bool,
    /// The total boundary.
    #[arg(long)]
    pub boundary: bool,
    /// The vertex p_k of the F-simplex.
    #[arg(long)]
    pub pk: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FnefArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma-separated coefficients r_2,...,r_{n/2}.
    #[arg(
        long,
        value_delimiter = ',',
        value_parser = parse_rational,
        allow_hyphen_values = true,
        required_unless_present = "alpha",
        conflicts_with = "alpha"
    )]
    pub coeffs: Vec<Rational>,
    /// Test A_alpha instead.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub alpha: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub alpha: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma,
    Fnef,
    PkThreshold,
    CInterval,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Largest n for the lemma, fnef and pk-threshold sweeps.
    #[arg(long, default_value_t = 30)]
    pub max_n: usize,
    /// n for the c-interval suite.
    #[arg(long, default_value_t = 20)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct ConeArgs {
    #[arg(long, required_unless_present = "table", conflicts_with = "table")]
    pub n: Option<usize>,
    #[arg(long, required_unless_present = "table", conflicts_with = "table")]
    pub k: Option<usize>,
    /// Compare F_{m-1} and F_{m-2} with the published table.
    #[arg(long)]
    pub table: bool,
    #[arg(long, value_parser = parse_range, default_value = "6:14", requires = "table")]
    pub n_range: NRange,
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Divisor(args) => commands::divisor(args),
        Command::Fnef(args) => commands::fnef(args),
        Command::Model(args) => commands::model(args),
        Command::Verify(args) => commands::verify(args),
        Command::Cone(args) => commands::cone(args),
    }
}

/// Parses `args`, runs the command and prints its output. Returns the exit
/// code: 0 done, 1 failed check, 2 usage error.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr()) * 2;
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if !cli.quiet {
                if cli.json {
                    println!("{}", outcome.report.to_json());
                } else {
                    print!("{}", outcome.text);
                }
            }
            outcome.report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
