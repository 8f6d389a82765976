use std::process::ExitCode;

use clap::Parser;
use minhom::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("minhom: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
