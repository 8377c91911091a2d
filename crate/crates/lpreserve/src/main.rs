use std::process::ExitCode;

use clap::Parser;
use lpreserve::cli::{run, JobConfig};

fn main() -> ExitCode {
    let config = JobConfig::parse();
    let outcome = run(&config);
    print!("{}", outcome.report);
    ExitCode::from(outcome.exit_code())
}
