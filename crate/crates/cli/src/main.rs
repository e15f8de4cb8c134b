use std::process::ExitCode;

use clap::Parser;
use vnfplace_cli::{run, Cli};

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("vnfplace: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
