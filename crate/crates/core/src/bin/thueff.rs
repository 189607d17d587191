use std::process::ExitCode;

use clap::Parser;
use thueff::cli::{run, CliConfig};

fn main() -> ExitCode {
    let config = CliConfig::parse();
    let (code, report) = run(&config);
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &report) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{report}"),
    }
    ExitCode::from(code as u8)
}
