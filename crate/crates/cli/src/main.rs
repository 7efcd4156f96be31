//! `qwalk`: run quantum-walk sojourn experiments and write CSV/JSON results.
//!
//! Exit codes: 0 success, 1 invalid configuration, 2 resource limit or
//! insufficient truncation order, 3 failed self-check.

mod args;
mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use config::RunConfig;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let run_args = match &cli.command {
        Command::Distribution(a) | Command::Sojourn(a) | Command::Genfun(a) | Command::Scan(a) => {
            a.clone()
        }
    };
    let result = RunConfig::from_args(run_args).and_then(|cfg| commands::run(&cli.command, &cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
