//! All-orders running coupling of N = 1 super-Yang–Mills with gauge group
//! SU(N):
//!
//! alpha(Q^2/mu^2) = -(2 pi / N) / W_k(-(mu^2/Q^2)^(3/2)).
//!
//! On branch k = -1 the Lambert argument lies in (-1/e, 0) once
//! Q^2/mu^2 > e^(2/3); there W <= -1 and alpha is real, positive and falls
//! off like 4 pi / (3 N ln(Q^2/mu^2)). Below that scale, and on branches 0
//! and +1, the coupling comes back complex.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::special_functions::{lambert_w, LambertBranch};

/// Lambert tolerance used for coupling evaluations.
pub const LAMBERT_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CouplingModel {
    gauge_n: u32,
    branch: LambertBranch,
}

impl CouplingModel {
    pub fn new(gauge_n: u32, branch: LambertBranch) -> Result<Self> {
        if gauge_n < 2 {
            return Err(domain(format!("SU(N) needs N >= 2, got {gauge_n}")));
        }
        Ok(Self { gauge_n, branch })
    }

    pub fn gauge_n(&self) -> u32 {
        self.gauge_n
    }

    pub fn branch(&self) -> LambertBranch {
        self.branch
    }
}

/// Coupling value together with the Lambert solve behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingValue {
    pub alpha: Complex64,
    pub lambert: Complex64,
    /// |W e^W - z| for the Lambert argument z
    pub lambert_residual: f64,
}

/// The Lambert argument -(Q^2/mu^2)^(-3/2).
pub fn lambert_argument(q2_ratio: f64) -> Complex64 {
    Complex64::new(-q2_ratio.powf(-1.5), 0.0)
}

pub fn evaluate(model: &CouplingModel, q2_ratio: f64) -> Result<CouplingValue> {
    if !(q2_ratio.is_finite() && q2_ratio > 0.0) {
        return Err(domain(format!("Q^2/mu^2 must be positive, got {q2_ratio}")));
    }
    let z = lambert_argument(q2_ratio);
    let w = lambert_w(model.branch, z, LAMBERT_TOL)?;
    Ok(CouplingValue {
        alpha: -(2.0 * PI / model.gauge_n as f64) / w,
        lambert: w,
        lambert_residual: (w * w.exp() - z).norm(),
    })
}

pub fn alpha(model: &CouplingModel, q2_ratio: f64) -> Result<Complex64> {
    evaluate(model, q2_ratio).map(|v| v.alpha)
}
