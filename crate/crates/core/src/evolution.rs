//! Moment-space evolution u d/du f(N, u) = a(u) gamma(N) f(N, u) and the
//! x-space check of the convolution form of the same equation.
//!
//! The equation is scalar and separable, so evolution is the exponential of
//! gamma(N) times the integrated coupling weight over ln u.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::kinematics::{phi_closed_form, EvolutionPoint};
use crate::moment_kernels::{gamma, SplittingFunction};
use crate::quadrature;

/// Series tolerance for closed-form evaluations inside the residual.
const PHI_TOL: f64 = 1e-17;

/// Coupling weight multiplying gamma(N) in the evolution equation.
#[derive(Clone)]
pub enum Coupling {
    /// Constant weight 1: alpha / 2 pi is absorbed into gamma.
    FixedAbsorbed,
    /// Weight as a function of s = ln u.
    Running(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Coupling {
    pub fn running<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Coupling::Running(Arc::new(f))
    }
}

impl fmt::Debug for Coupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coupling::FixedAbsorbed => f.write_str("FixedAbsorbed"),
            Coupling::Running(_) => f.write_str("Running(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EvolutionSpec {
    pub n: Complex64,
    pub u_start: f64,
    pub u_end: f64,
    pub coupling: Coupling,
}

impl EvolutionSpec {
    pub fn new(n: Complex64, u_start: f64, u_end: f64, coupling: Coupling) -> Result<Self> {
        if !(u_start.is_finite() && u_end.is_finite() && u_start >= 1.0 && u_end >= u_start) {
            return Err(domain(format!(
                "evolution needs 1 <= u_start <= u_end, got {u_start} -> {u_end}"
            )));
        }
        gamma(n)?;
        Ok(Self {
            n,
            u_start,
            u_end,
            coupling,
        })
    }
}

/// f(N, u_end) from f(N, u_start).
pub fn evolve_moment(spec: &EvolutionSpec, f_start: Complex64, tol: f64) -> Result<Complex64> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(domain(format!("tolerance must be positive, got {tol}")));
    }
    let g = gamma(spec.n)?;
    let exponent = match &spec.coupling {
        Coupling::FixedAbsorbed => (spec.u_end / spec.u_start).ln(),
        Coupling::Running(weight) => {
            quadrature::integrate_real(|s| weight(s), spec.u_start.ln(), spec.u_end.ln(), tol)?.0
        }
    };
    Ok(f_start * (g * exponent).exp())
}

/// Relative mismatch between the two sides of
/// u d/du phi(x, u) = int_x^1 dy/y phi(y, u) P(x/y)
/// for the closed-form phi, with the left side by a central difference of
/// step `h` in ln u.
pub fn dglap_residual_xspace(x: f64, u: f64, h: f64, qtol: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain(format!("x must lie in (0, 1), got {x}")));
    }
    if !(u.is_finite() && u > 1.0) {
        return Err(domain(format!("u must exceed 1, got {u}")));
    }
    if !(h.is_finite() && h > 0.0) || u * (-h).exp() <= 1.0 {
        return Err(domain(format!(
            "step {h} must be positive and keep u e^-h above 1"
        )));
    }
    let phi = |x: f64, u: f64| -> Result<f64> {
        Ok(phi_closed_form(&EvolutionPoint::new(x, u)?, PHI_TOL)?.value)
    };

    let lhs = (phi(x, u * h.exp())? - phi(x, u * (-h).exp())?) / (2.0 * h);

    let kernel = SplittingFunction::ToyLinear;
    // the closed form cannot fail for y in (x, 1], u > 1
    let integrand = |y: f64| {
        let value = phi(y, u).unwrap_or(f64::NAN);
        value * kernel.eval(x / y) / y
    };
    let (rhs, _) = quadrature::integrate_real(integrand, x, 1.0, qtol)?;
    Ok((lhs - rhs).abs() / (rhs.abs() + 1e-300))
}
