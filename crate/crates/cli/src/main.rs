use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hopfkit_cli::commands::{run, Cli};
use hopfkit_cli::format::write_text;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &outcome.out {
        Some(path) => write_text(path, &outcome.text),
        None => std::io::stdout()
            .write_all(outcome.text.as_bytes())
            .map_err(|e| hopfkit_cli::CliError::Io(e.to_string())),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    ExitCode::from(outcome.code as u8)
}
