use std::process::ExitCode;

use clap::Parser;
use poncelet_cli::execute;

fn main() -> ExitCode {
    let cli = poncelet_cli::args::Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("poncelet: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
