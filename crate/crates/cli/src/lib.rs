//! Command-line runner for `supneg`: measures, superposition bounds, the
//! GHZ/W sweep and the seeded verification harness.

pub mod coeff;
pub mod commands;
pub mod config;
pub mod verify;

use std::io::Write;

use anyhow::Result;

use config::{Command, RunConfig};

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Caps the rayon pool when `SUPNEG_THREADS` is set.
pub fn init_threads() {
    let Ok(text) = std::env::var("SUPNEG_THREADS") else {
        return;
    };
    match text.trim().parse::<usize>() {
        Ok(n) if n >= 1 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
            {
                log::warn!("SUPNEG_THREADS ignored: {e}");
            }
        }
        _ => log::warn!("SUPNEG_THREADS={text:?} is not a positive integer, ignored"),
    }
}

/// Runs one command, writing results to their destinations. Returns the exit code.
pub fn run(config: &RunConfig) -> Result<i32> {
    match &config.command {
        Command::Measure(args) => {
            let text = commands::run_measure(args)?;
            commands::write_output(args.output.as_deref(), &text)?;
        }
        Command::Bounds(args) => {
            let text = commands::run_bounds(args)?;
            commands::write_output(args.output.as_deref(), &text)?;
        }
        Command::Sweep(args) => {
            let out = commands::run_sweep(args)?;
            commands::write_output(args.output.as_deref(), &out.csv)?;
            match commands::sidecar_path(args) {
                Some(path) => commands::write_output(Some(&path), &out.sidecar)?,
                None => eprint!("{}", out.sidecar),
            }
        }
        Command::Verify(args) => {
            let out = verify::run_verify(args)?;
            commands::write_output(args.output.as_deref(), &out.summary_json())?;
            if !out.pass() {
                let mut err = std::io::stderr().lock();
                for f in &out.failures {
                    writeln!(err, "violation: {f}")?;
                }
                return Ok(EXIT_VIOLATION);
            }
        }
    }
    Ok(EXIT_OK)
}
