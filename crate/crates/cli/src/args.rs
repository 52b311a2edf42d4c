use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mellin_dglap::mellin_inversion::DirectConfig;
use mellin_dglap::Method;

use crate::config::NumericConfig;

/// Mellin-plane evaluation of the toy DGLAP solution phi(x, u).
#[derive(Debug, Parser)]
#[command(name = "mellin-dglap", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate phi(x, u) on a grid by each requested method.
    Scan(ScanArgs),
    /// Tabulate the Lambert-W running coupling.
    Coupling(CouplingArgs),
    /// Run the residual and agreement battery and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct NumericArgs {
    /// Real part c of the vertical contour Re N = c.
    #[arg(long, default_value_t = DirectConfig::default().anchor, allow_negative_numbers = true)]
    pub contour_anchor: f64,
    /// Half height T of the vertical contour.
    #[arg(long, default_value_t = DirectConfig::default().half_extent)]
    pub contour_extent: f64,
    /// Trapezoid nodes on the vertical contour.
    #[arg(long, default_value_t = DirectConfig::default().nodes)]
    pub contour_nodes: usize,
    /// Chebyshev-Gauss nodes for the mapped route.
    #[arg(long, default_value_t = 64)]
    pub cheb_nodes: usize,
    /// Relative stopping tolerance of the dual series.
    #[arg(long, default_value_t = 1e-14)]
    pub series_tol: f64,
    /// Finite-difference step in ln x and ln u.
    #[arg(long, default_value_t = 1e-3)]
    pub fd_step: f64,
    /// Relative tolerance of the adaptive quadrature.
    #[arg(long, default_value_t = 1e-12)]
    pub quad_tol: f64,
}

impl NumericArgs {
    pub fn config(&self) -> NumericConfig {
        NumericConfig {
            contour_anchor: self.contour_anchor,
            contour_extent: self.contour_extent,
            contour_nodes: self.contour_nodes,
            cheb_nodes: self.cheb_nodes,
            series_tol: self.series_tol,
            fd_step: self.fd_step,
            quad_tol: self.quad_tol,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    /// Comma-separated x values in (0, 1].
    #[arg(long = "x", value_delimiter = ',', allow_negative_numbers = true,
          default_values_t = crate::scan::DEFAULT_X)]
    pub x_values: Vec<f64>,
    /// Comma-separated u values, u > 0.
    #[arg(long = "u", value_delimiter = ',', allow_negative_numbers = true,
          default_values_t = crate::scan::DEFAULT_U)]
    pub u_values: Vec<f64>,
    /// Comma-separated subset of direct, dual, mapped, oracle.
    #[arg(long, value_delimiter = ',', default_values_t = Method::ALL)]
    pub methods: Vec<Method>,
    #[command(flatten)]
    pub numeric: NumericArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CouplingArgs {
    /// N of the gauge group SU(N).
    #[arg(long, default_value_t = 3)]
    pub gauge_n: u32,
    /// Lambert branch: -1, 0 or 1.
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    pub branch: i32,
    /// Explicit comma-separated Q^2/mu^2 values. Overrides the log grid.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub q2: Vec<f64>,
    /// Lower end of the log-spaced grid [default: e^(2/3) + 0.01].
    #[arg(long)]
    pub q2_min: Option<f64>,
    /// Upper end of the log-spaced grid.
    #[arg(long, default_value_t = 1e8)]
    pub q2_max: f64,
    /// Points in the log-spaced grid.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Seed for the random complex samples.
    #[arg(long, default_value_t = 20_240_617)]
    pub seed: u64,
    #[command(flatten)]
    pub numeric: NumericArgs,
    /// Write the table to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}
