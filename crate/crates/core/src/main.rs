use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hurwitz_cells::cli::{dispatch, Cli};
use hurwitz_cells::report::emit;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            let bytes = emit(&report, cli.config.format);
            if std::io::stdout().lock().write_all(&bytes).is_err() {
                return ExitCode::from(1);
            }
            match &report.witness {
                None if report.passed => ExitCode::SUCCESS,
                witness => {
                    eprintln!("contract violation: {}", witness.as_deref().unwrap_or("see report"));
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
