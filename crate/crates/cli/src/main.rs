use std::process::ExitCode;

use clap::Parser;
use geoforbid_cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Status::InputError as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.status as u8)
        }
    }
}
