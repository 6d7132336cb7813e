use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use macmahon_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(&cli) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = stdout.write_all(e.stdout.as_bytes());
            let _ = stdout.flush();
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
