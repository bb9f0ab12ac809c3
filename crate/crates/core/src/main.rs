use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use galois_inertia::cli::{error_line, run, Cli, EXIT_ERROR};
use galois_inertia::Error;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_ERROR),
            };
        }
    };
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{}", error_line(&e));
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let written = match &outcome.output {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("{}", error_line(&Error::Io(e.to_string())));
        return ExitCode::from(EXIT_ERROR);
    }
    ExitCode::from(outcome.status)
}
