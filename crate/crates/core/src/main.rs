use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use moduli_hilbert::cli::{run, Cli, Outcome};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = run(&cli);
    match &outcome {
        Outcome::Ok(text) | Outcome::Failed(text) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
        }
        Outcome::Usage(msg) => eprintln!("error: {msg}"),
    }
    outcome.exit_code()
}
