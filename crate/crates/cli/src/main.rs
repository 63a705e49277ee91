use std::process::ExitCode;

use clap::Parser;
use qes_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            println!("{}: {} -> {}", cli.command.name(), outcome.summary, outcome.path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qes {}: {e}", cli.command.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
