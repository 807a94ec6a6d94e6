//! Command-line front end for the `holext` numerics.
//!
//! [`run`] parses arguments, runs one command, writes its report and returns
//! the exit status: 0 when the verdict passes or matches `--expect`, 1 on a
//! failing or mismatched verdict, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use holext::extension::Verdict;

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod grid_file;
pub mod json;
pub mod parallel;
pub mod source;

pub use cli::{Cli, Command};
pub use error::{CliError, Result};

use config::Expect;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn exit_status(verdict: Option<Verdict>, expect: Option<Expect>) -> i32 {
    match (verdict, expect) {
        (Some(v), Some(e)) => {
            if v.is_pass() == (e == Expect::Pass) {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        (Some(Verdict::Fail), None) => EXIT_FAIL,
        (None, Some(_)) => EXIT_USAGE,
        _ => EXIT_OK,
    }
}

fn output_args(command: &Command) -> &cli::OutputArgs {
    match command {
        Command::TestCircle(a) => &a.output,
        Command::TestLine(a) => &a.output,
        Command::TestFamily(a) => &a.output,
        Command::DiscAnalyticity(a) => &a.output,
        Command::BallVerdict(a) => &a.output,
        Command::Slice(a) => &a.output,
        Command::NormalizePair(a) => &a.output,
        Command::Prop71(a) => &a.output,
        Command::Fiber(a) => &a.output,
        Command::SemiquadricIntersect(a) => &a.output,
        Command::GalleryList(a) => &a.output,
    }
}

/// Runs a parsed command and writes its report. Returns the exit status.
pub fn execute(cli: &Cli) -> Result<i32> {
    let output = output_args(&cli.command);
    let outcome = commands::execute(&cli.command)?;
    if outcome.verdict.is_none() && output.expect.is_some() {
        return Err(CliError::usage(
            "--expect needs a command that produces a verdict",
        ));
    }
    match &output.out {
        Some(path) => std::fs::write(path, &outcome.bytes).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&outcome.bytes)
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Write {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    Ok(exit_status(outcome.verdict, output.expect))
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod golden;
