//! Command-line front end for `mellin-dglap`: grid scans comparing the four
//! evaluation routes, running-coupling tables and the verification battery.

pub mod args;
pub mod config;
pub mod coupling;
pub mod output;
pub mod scan;
pub mod verify;

use std::io::Write;

use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("writing output failed: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

/// Runs one subcommand. `Ok(true)` means every record and check met its
/// threshold.
pub fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Scan(a) => {
            let req = scan::ScanRequest {
                x_values: a.x_values,
                u_values: a.u_values,
                methods: a.methods,
                numeric: a.numeric.config(),
            };
            let outcome = scan::run_scan(&req)?;
            let mut out = output::open(a.output.output.as_deref())?;
            output::write_rows(&outcome.records, a.output.format, &mut out)?;
            for msg in &outcome.failures {
                eprintln!("failed: {msg}");
            }
            let above = outcome
                .records
                .iter()
                .filter(|r| !r.passed && !r.value.is_nan())
                .count();
            if above > 0 {
                eprintln!("{above} record(s) above their acceptance threshold");
            }
            Ok(outcome.all_passed())
        }
        Command::Coupling(a) => {
            let q2 = if a.q2.is_empty() {
                let lo = a.q2_min.unwrap_or_else(coupling::default_q2_min);
                coupling::log_grid(lo, a.q2_max, a.points)?
            } else {
                a.q2
            };
            let (rows, failures) = coupling::run_coupling_curve(a.gauge_n, a.branch, &q2)?;
            let mut out = output::open(a.output.output.as_deref())?;
            output::write_rows(&rows, a.output.format, &mut out)?;
            for msg in &failures {
                eprintln!("failed: {msg}");
            }
            Ok(failures.is_empty())
        }
        Command::Verify(a) => {
            let checks = verify::run_residual_suite(&a.numeric.config(), a.seed)?;
            let mut out = output::open(a.output.as_deref())?;
            out.write_all(verify::render_table(&checks).as_bytes())?;
            out.flush()?;
            Ok(checks.iter().all(|c| c.passed))
        }
    }
}
