use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tadpole_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            for f in &out.files {
                eprintln!("wrote {}", f.display());
            }
            if out.failed > 0 {
                let err = CliError::VerifyFailed {
                    failed: out.failed,
                    total: out.total,
                };
                eprintln!("error: {err}");
                return ExitCode::from(err.exit_code() as u8);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
