//! Command-line front end for `binomdiv`.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical violation,
//! 2 on usage, parse or resource errors.

pub mod args;
pub mod commands;
pub mod report;
pub mod suites;

use std::process::ExitCode;

use args::{Cli, Command};
use binomdiv_core::Error;
use clap::Parser;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Pass,
    Violation,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Math(e.to_string())
        }
    }
}

pub fn execute(cli: &Cli) -> std::result::Result<Exit, Failure> {
    match &cli.command {
        Command::Verify(a) => commands::verify(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Trace(a) => commands::trace(a),
        Command::LemmaFuzz(a) => commands::lemma_fuzz(a),
        Command::Integrality(a) => commands::integrality(a),
        Command::OracleCheck(a) => commands::oracle_check(a),
    }
}

pub fn run<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        // clap exits with 0 for --help/--version and 2 otherwise
        Err(e) => e.exit(),
    };
    match execute(&cli) {
        Ok(Exit::Pass) => ExitCode::SUCCESS,
        Ok(Exit::Violation) => ExitCode::from(1),
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
