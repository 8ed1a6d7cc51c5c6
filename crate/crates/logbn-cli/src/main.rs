//! Command-line front end: configuration, orchestration, persistence.
//!
//! ```text
//! logbn --config run.cfg [--set key=value]... [--jobs N]
//! ```
//!
//! The configuration file is a flat key=value document; `--set` overrides
//! individual keys. Exit codes: 0 ok, 2 usage, 3 convergence failure,
//! 4 numerical-accuracy failure, 5 regime error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use crate::config::Config;

#[derive(Parser)]
#[command(name = "logbn", version, about = "Solver and verification toolkit for the critical-exponent problem with logarithmic perturbation")]
struct Args {
    /// Path to the key=value configuration file
    #[arg(long)]
    config: PathBuf,
    /// Override a configuration key, e.g. --set params.mu=1.0 (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Worker cap; the numerical engine is single-threaded, so any value
    /// of at least 1 is accepted
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(2);
    }
    let mut cfg = match Config::load(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(commands::exit_code(&e) as u8);
        }
    };
    for kv in &args.set {
        if let Err(e) = cfg.apply_override(kv) {
            eprintln!("error: {e}");
            return ExitCode::from(commands::exit_code(&e) as u8);
        }
    }
    match commands::run(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}
