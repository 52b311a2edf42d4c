use crate::error::{domain, Result};
use crate::special_functions::{bessel_i0, phi_series_signed, SeriesResult};

/// Kinematic point (x, u) with x the momentum fraction and u = mu^2/Lambda^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionPoint {
    x: f64,
    u: f64,
    ln_u: f64,
    ln_inv_x: f64,
}

impl EvolutionPoint {
    pub fn new(x: f64, u: f64) -> Result<Self> {
        if !(x.is_finite() && x > 0.0 && x <= 1.0) {
            return Err(domain(format!("x must lie in (0, 1], got {x}")));
        }
        if !(u.is_finite() && u > 0.0) {
            return Err(domain(format!("u must be positive and finite, got {u}")));
        }
        Ok(Self {
            x,
            u,
            ln_u: u.ln(),
            ln_inv_x: -x.ln(),
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn ln_u(&self) -> f64 {
        self.ln_u
    }

    /// ln(1/x), non-negative.
    pub fn ln_inv_x(&self) -> f64 {
        self.ln_inv_x
    }

    /// t = ln u * ln(1/x)
    pub fn t(&self) -> f64 {
        self.ln_u * self.ln_inv_x
    }

    /// w = sqrt(ln u / ln(1/x)), defined for x < 1 and u > 1.
    pub fn w(&self) -> Option<f64> {
        if self.x < 1.0 && self.u > 1.0 {
            Some((self.ln_u / self.ln_inv_x).sqrt())
        } else {
            None
        }
    }
}

/// phi(x, u) = x I0(2 sqrt(t)), continued to t < 0 through the signed series.
pub fn phi_closed_form(p: &EvolutionPoint, tol: f64) -> Result<SeriesResult> {
    let t = p.t();
    let series = if t >= 0.0 {
        bessel_i0(2.0 * t.sqrt(), tol)?
    } else {
        phi_series_signed(t, tol)?
    };
    Ok(SeriesResult {
        value: p.x() * series.value,
        truncation_estimate: p.x() * series.truncation_estimate,
        ..series
    })
}
