use std::process::ExitCode;

use clap::Parser;
use mixcode::cli::{run, Cli, EXIT_INVALID};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    let code = match &cli.flags.output {
        Some(path) => match std::fs::write(path, &out.body) {
            Ok(()) => out.code,
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                EXIT_INVALID
            }
        },
        None => {
            print!("{}", out.body);
            out.code
        }
    };
    ExitCode::from(code as u8)
}
