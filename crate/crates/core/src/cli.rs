//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed check or oracle mismatch, 2 bad input,
//! 3 internal error, 4 oracle size cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::gamma::GroupData;
use crate::oracle::run_oracle;
use crate::render::{render, CellMode, Format, DEFAULT_PRECISION};
use crate::wreath::{full_table, run_checks};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "spinwreath", version, about = "Spin character tables of spin wreath products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute and render the spin character table.
    Table(TableArgs),
    /// Run the invariant suite on the computed table.
    Check(GroupArgs),
    /// Compare the table with a brute-force numeric character table.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Builtin name (trivial, z2, z3, z4, klein4, s3, d4) or path to a group JSON file.
    #[arg(long)]
    pub group: String,
    /// Rank of the wreath product, at least 1.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Latex,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Render floating-point values instead of exact ones.
    #[arg(long)]
    pub numeric: bool,
    /// Significant digits in numeric mode.
    #[arg(long, default_value_t = DEFAULT_PRECISION, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=17))]
    pub precision: usize,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Seed for the random class-sum combination.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest accepted deviation between formula and numeric values.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::OracleTooLarge { .. } => EXIT_CAP,
        Error::Internal(_) | Error::EigenSeparation(_) | Error::NonInteger { .. } | Error::Serialization(_) => {
            EXIT_INTERNAL
        }
        _ => EXIT_USAGE,
    }
}

fn load(args: &GroupArgs) -> Result<GroupData, Error> {
    GroupData::load(&args.group)
}

fn table(args: &TableArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let gd = load(&args.group)?;
    let t = full_table(args.group.n, &gd)?;
    let format = match args.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Latex => Format::Latex,
    };
    let mode = if args.numeric { CellMode::Numeric(args.precision) } else { CellMode::Exact };
    let text = render(&t, &gd, format, mode)?;
    match &args.output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn check(args: &GroupArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let gd = load(args)?;
    let t = full_table(args.n, &gd)?;
    let report = run_checks(&t, &gd)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    match report.first_failure() {
        None => Ok(EXIT_OK),
        Some(item) => {
            writeln!(err, "check failed: {}: {}", item.name, item.detail)?;
            Ok(EXIT_FAILED)
        }
    }
}

fn oracle(args: &OracleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(Error::InvalidPartition(format!("tolerance must be positive, got {}", args.tol)));
    }
    let gd = load(&args.group)?;
    let report = run_oracle(&gd, args.group.n, args.seed, args.tol)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    if report.passed() {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "{report}")?;
        Ok(EXIT_FAILED)
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Table(a) => table(a, out),
        Command::Check(a) => check(a, out, err),
        Command::Oracle(a) => oracle(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("spinwreath").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["table", "--group", "z2", "--n", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["table", "--group", "nope", "--n", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["table", "--group", "z2"]).0, EXIT_USAGE);
        assert_eq!(call(&["oracle", "--group", "z2", "--n", "1", "--tol", "-1"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::OracleTooLarge { order: 10, cap: 1 }), EXIT_CAP);
        assert_eq!(exit_code(&Error::Internal("x".into())), EXIT_INTERNAL);
        assert_eq!(exit_code(&Error::MalformedGroup("x".into())), EXIT_USAGE);
    }

    #[test]
    fn table_csv() {
        let (code, out, _) = call(&["table", "--group", "z2", "--n", "2", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 9);
    }
}
