use std::process::ExitCode;

use clap::Parser;
use p3cn::cli::{self, Cli};

fn main() -> ExitCode {
    ExitCode::from(cli::run(Cli::parse()))
}
