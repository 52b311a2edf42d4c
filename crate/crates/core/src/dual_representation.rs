//! Dual route: the M-plane integral of x^(-chi(M)) u^M / M evaluated by
//! residues at M = 0, plus finite-difference checks of the two first-order
//! equations obeyed by the power-law moment functions.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::kinematics::{phi_closed_form, EvolutionPoint};
use crate::mellin_inversion::ORACLE_TOL;
use crate::moment_kernels::{chi, gamma};
use crate::report::{Method, MethodReport};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualSeriesConfig {
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for DualSeriesConfig {
    fn default() -> Self {
        Self {
            tol: 1e-14,
            max_terms: 500,
        }
    }
}

/// Residue of u^M / M^(k+1) at M = 0, i.e. (ln u)^k / k!.
pub fn residue_power_moment(k: usize, u: f64) -> Result<f64> {
    if !(u.is_finite() && u > 0.0) {
        return Err(domain(format!("residue needs u > 0, got {u}")));
    }
    let ln_u = u.ln();
    Ok((1..=k).fold(1.0, |acc, j| acc * ln_u / j as f64))
}

/// phi(x, u) = x sum_k (ln(1/x))^k / k! * Res[u^M / M^(k+1), 0].
pub fn eval_dual(p: &EvolutionPoint, cfg: &DualSeriesConfig) -> Result<MethodReport> {
    if !(cfg.tol.is_finite() && cfg.tol > 0.0) || cfg.max_terms == 0 {
        return Err(domain("dual series needs tol > 0 and max_terms >= 1"));
    }
    let ln_inv_x = p.ln_inv_x();
    let mut x_power = 1.0_f64; // (ln 1/x)^k / k!
    let mut sum = residue_power_moment(0, p.u())?;
    let mut last = sum;
    let mut terms = 1;
    loop {
        if terms >= cfg.max_terms {
            return Err(Error::Truncation {
                partial_sum: p.x() * sum,
                terms,
            });
        }
        let k = terms;
        x_power *= ln_inv_x / k as f64;
        let next = x_power * residue_power_moment(k, p.u())?;
        if next.abs() <= last.abs() && next.abs() < cfg.tol * sum.abs().max(1.0) {
            let oracle = phi_closed_form(p, ORACLE_TOL)?.value;
            return Ok(MethodReport::new(
                Method::Dual,
                p.x() * sum,
                p.x() * next.abs(),
                terms,
                oracle,
            ));
        }
        sum += next;
        last = next;
        terms += 1;
    }
}

/// Max relative residual of `s d/ds phi - rate * phi` over interior points
/// of `grid`, where phi = exp(rate * s) and s are the grid abscissas.
/// Uses the three-point derivative for possibly uneven spacing.
fn power_law_residual(rate: Complex64, grid: &[f64]) -> f64 {
    let phi: Vec<Complex64> = grid.iter().map(|&s| (rate * s).exp()).collect();
    (1..grid.len() - 1)
        .map(|j| {
            let h1 = grid[j] - grid[j - 1];
            let h2 = grid[j + 1] - grid[j];
            let derivative = phi[j - 1] * (-h2 / (h1 * (h1 + h2)))
                + phi[j] * ((h2 - h1) / (h1 * h2))
                + phi[j + 1] * (h1 / (h2 * (h1 + h2)));
            (derivative - rate * phi[j]).norm() / phi[j].norm()
        })
        .fold(0.0, f64::max)
}

fn log_grid(points: &[f64], what: &str) -> Result<Vec<f64>> {
    if points.len() < 3 {
        return Err(domain(format!("{what} grid needs at least 3 points")));
    }
    let logs: Vec<f64> = points.iter().map(|v| v.ln()).collect();
    if logs.iter().any(|l| !l.is_finite()) || logs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(domain(format!(
            "{what} grid must be positive and strictly increasing"
        )));
    }
    Ok(logs)
}

/// Residual of x d/dx phi(x, M) = -chi(M) phi(x, M) for phi = x^(-chi(M)),
/// with derivatives taken by central differences in ln x.
pub fn dual_ode_residual(m: Complex64, x_grid: &[f64]) -> Result<f64> {
    let rate = -chi(m)?;
    if x_grid.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
        return Err(domain("x grid must lie in (0, 1)"));
    }
    let s = log_grid(x_grid, "x")?;
    Ok(power_law_residual(rate, &s))
}

/// Residual of u d/du phi(N, u) = gamma(N) phi(N, u) for phi = u^gamma(N),
/// with derivatives taken by central differences in ln u.
pub fn moment_ode_residual(n: Complex64, u_grid: &[f64]) -> Result<f64> {
    let rate = gamma(n)?;
    if u_grid.iter().any(|&u| u < 1.0) {
        return Err(domain("u grid must satisfy u >= 1"));
    }
    let s = log_grid(u_grid, "u")?;
    Ok(power_law_residual(rate, &s))
}
