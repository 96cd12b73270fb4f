use std::process::ExitCode;

use modeq_cli::config::{CliParseError, JobConfig};
use modeq_cli::jobs::execute;

fn main() -> ExitCode {
    let config = match JobConfig::parse_from(std::env::args_os()) {
        Ok(c) => c,
        Err(CliParseError::Clap(msg)) => {
            eprint!("{msg}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match execute(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
