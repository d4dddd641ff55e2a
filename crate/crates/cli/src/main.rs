mod args;
mod commands;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    let (value, code) = match commands::run(cli) {
        Ok(v) => (v, ExitCode::SUCCESS),
        Err(e) => (e.to_json(), ExitCode::from(1)),
    };
    let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    // A closed pipe downstream is not our failure.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    code
}
