use std::process::ExitCode;

use clap::Parser;
use mellin_dglap_cli::args::Cli;

fn main() -> ExitCode {
    match mellin_dglap_cli::run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
