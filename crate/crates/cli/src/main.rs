mod commands;
mod config;
mod error;
mod models;

use std::fs::File;
use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::Parser;

use config::{Args, RunConfig};
use error::CliError;

const EXIT_USAGE: u8 = 1;
const EXIT_NOT_CONVERGED: u8 = 2;

fn run(args: Args) -> Result<bool, CliError> {
    let command = args.command;
    let config = RunConfig::from_args(args)?;
    let report = commands::run(command, &config)?;
    match &config.out {
        Some(path) => report.write(BufWriter::new(File::create(path)?))?,
        None => report.write(io::stdout().lock())?,
    }
    Ok(report.converged || command == config::CommandName::Nernst)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("casimir: some integrals did not converge; see the status column");
            ExitCode::from(EXIT_NOT_CONVERGED)
        }
        Err(e) => {
            eprintln!("casimir: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
