use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use divisor_cli::{run, Cli, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(err) => {
            let _ = out.flush();
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
