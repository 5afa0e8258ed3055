use std::process::ExitCode;

use clap::Parser;
use eqrr::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("eqrr: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
