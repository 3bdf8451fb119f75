//! `interfam` command-line tool. Output is CSV or `key,value` text on stdout.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numeric failure or failed
//! check, 3 I/O error.

// `!(x > 0.0)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod format;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numeric(String),
    Io(String),
    /// A check suite reported violations; its report is already printed.
    CheckFailed,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numeric(_) | CliError::CheckFailed => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<interfam::Error> for CliError {
    fn from(e: interfam::Error) -> Self {
        if e.is_validation() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Numeric(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let res = commands::run(&cli, &mut out).and_then(|()| out.flush().map_err(CliError::from));
    match res {
        Ok(()) => ExitCode::SUCCESS,
        // a closed pipe is not worth reporting
        Err(CliError::Io(msg)) if msg.contains("Broken pipe") => ExitCode::from(3),
        Err(e) => {
            let _ = out.flush();
            match &e {
                CliError::Validation(m) => eprintln!("error: {m}"),
                CliError::Numeric(m) => eprintln!("numeric error: {m}"),
                CliError::Io(m) => eprintln!("i/o error: {m}"),
                CliError::CheckFailed => eprintln!("check failed"),
            }
            ExitCode::from(e.code())
        }
    }
}
