//! `hexspan`: command-line driver for distance colouring of the hexagonal grid.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 resource-guard refusal.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(&cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status() as u8)
        }
    }
}
