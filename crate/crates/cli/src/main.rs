use std::process::ExitCode;

use clap::Parser;
use fincat_cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = cli.command.parts();
    match run(name, args) {
        Ok(report) => {
            print!("{}", report.emit(args.output));
            if report.all_checks_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
