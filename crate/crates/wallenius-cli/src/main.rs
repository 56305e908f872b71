use std::process::ExitCode;

use clap::Parser;

use wallenius_cli::args::Cli;
use wallenius_cli::commands;

fn main() -> ExitCode {
    // clap reports usage errors itself with exit code 2
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
