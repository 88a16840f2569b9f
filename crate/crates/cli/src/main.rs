use std::io;
use std::process::ExitCode;

use clap::Parser;
use hwbound::commands::{run, USAGE_EXIT};
use hwbound::RunConfig;

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(err) => {
            let _ = err.print();
            // help/version exit 0; every parse error maps to the usage code
            return if err.use_stderr() {
                ExitCode::from(USAGE_EXIT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cfg, &mut out) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(err) => {
            eprintln!("error: {err}");
            if let Some(hint) = err.hint() {
                eprintln!("{hint}");
            }
            ExitCode::from(USAGE_EXIT)
        }
    }
}
