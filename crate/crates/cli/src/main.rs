mod args;
mod cache;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::run::RunError;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run::run(&cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(RunError::Unstabilized(report)) => {
            let _ = stdout.write_all(report.as_bytes());
            eprintln!("error: chain did not stabilize");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
