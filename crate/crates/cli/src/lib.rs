//! Command-line front end: sweeps, Wigner tables, oracle cross-checks and
//! figure data. [`run`] returns the process exit code.

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod output;
pub mod settings;

use std::ffi::OsString;

use clap::Parser;

use args::{Cli, Command};
pub use error::CliError;

/// Parses `argv` (program name first), runs the command and returns the
/// exit code: 0 ok, 1 I/O, 2 arguments, 3 oracle mismatch, 4 degenerate.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Scan(a) => commands::run_scan(a),
        Command::Wigner(a) => commands::run_wigner(a),
        Command::OracleCheck(a) => commands::run_oracle_check(a),
        Command::Repro(a) => manifest::run_repro(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("nongauss: {e}");
            e.exit_code()
        }
    }
}
