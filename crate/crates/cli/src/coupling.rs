use mellin_dglap::running_coupling::{evaluate, lambert_argument, CouplingModel};
use mellin_dglap::LambertBranch;
use serde::Serialize;

use crate::output::{float17, Row};
use crate::CliError;

/// Round-trip bound on |W e^W - z|, relative to 1 + |z|.
pub const LAMBERT_RESIDUAL_LIMIT: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingRow {
    pub q2_ratio: f64,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub lambert_residual: f64,
    #[serde(skip)]
    pub passed: bool,
}

impl Row for CouplingRow {
    const HEADER: &'static str = "q2_ratio,alpha_re,alpha_im,lambert_residual";

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{}",
            float17(self.q2_ratio),
            float17(self.alpha_re),
            float17(self.alpha_im),
            float17(self.lambert_residual)
        )
    }
}

/// Default lower end of the grid, just above the branch point of W_{-1}.
pub fn default_q2_min() -> f64 {
    (2.0f64 / 3.0).exp() + 0.01
}

pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi >= lo) {
        return Err(CliError::Usage(format!(
            "need 0 < q2-min <= q2-max, got {lo} and {hi}"
        )));
    }
    match points {
        0 => Err(CliError::Usage("--points must be at least 1".into())),
        1 => Ok(vec![lo]),
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            Ok((0..points)
                .map(|j| (a + (b - a) * j as f64 / (points - 1) as f64).exp())
                .collect())
        }
    }
}

/// One row per Q^2/mu^2 value, in input order. Returns the rows and the
/// messages of any evaluation that failed or missed the residual bound.
pub fn run_coupling_curve(
    gauge_n: u32,
    branch: i32,
    q2_ratios: &[f64],
) -> Result<(Vec<CouplingRow>, Vec<String>), CliError> {
    let branch = LambertBranch::new(branch).map_err(|e| CliError::Usage(e.to_string()))?;
    let model = CouplingModel::new(gauge_n, branch).map_err(|e| CliError::Usage(e.to_string()))?;
    if q2_ratios.is_empty() {
        return Err(CliError::Usage("no Q^2/mu^2 values given".into()));
    }
    if let Some(q) = q2_ratios.iter().find(|&&q| !(q.is_finite() && q > 0.0)) {
        return Err(CliError::Usage(format!(
            "Q^2/mu^2 must be positive, got {q}"
        )));
    }

    let mut rows = Vec::with_capacity(q2_ratios.len());
    let mut failures = Vec::new();
    for &q in q2_ratios {
        match evaluate(&model, q) {
            Ok(v) => {
                let limit = LAMBERT_RESIDUAL_LIMIT * (1.0 + lambert_argument(q).norm());
                let passed = v.lambert_residual <= limit;
                if !passed {
                    failures.push(format!(
                        "q2_ratio={q}: Lambert residual {:e} above {limit:e}",
                        v.lambert_residual
                    ));
                }
                rows.push(CouplingRow {
                    q2_ratio: q,
                    alpha_re: v.alpha.re,
                    alpha_im: v.alpha.im,
                    lambert_residual: v.lambert_residual,
                    passed,
                });
            }
            Err(e) => {
                failures.push(format!("q2_ratio={q}: {e}"));
                rows.push(CouplingRow {
                    q2_ratio: q,
                    alpha_re: f64::NAN,
                    alpha_im: f64::NAN,
                    lambert_residual: f64::NAN,
                    passed: false,
                });
            }
        }
    }
    Ok((rows, failures))
}
