use std::process::ExitCode;

use clap::Parser;
use degree_forge_cli::{run, RunConfig, EXIT_USAGE};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    ExitCode::from(run(
        &config,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    ))
}
