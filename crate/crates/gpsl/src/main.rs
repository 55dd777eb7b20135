use std::process::ExitCode;

use clap::Parser;
use gpsl::cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match gpsl::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
