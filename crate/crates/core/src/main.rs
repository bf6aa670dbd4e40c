use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use colored_burau::cli::{run, CommandConfig};

fn main() -> ExitCode {
    let config = CommandConfig::parse();
    let outcome = run(&config);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
