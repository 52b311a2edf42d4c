//! The toy anomalous dimension gamma(N) = 1/(N+1), its dual
//! chi(M) = 1/M - 1, and the splitting function whose Mellin moment is
//! gamma.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::quadrature;

/// Evaluations closer than this to a pole are rejected.
pub const POLE_EXCLUSION: f64 = 1e-12;

/// Exclusion radius used when screening sample points.
pub const SAMPLE_POLE_EXCLUSION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    /// gamma(N) = 1/(N+1)
    ToyGamma,
    /// chi(M) = 1/M - 1
    ToyChi,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentKernel {
    pub kind: KernelKind,
    pub pole_locations: Vec<Complex64>,
}

impl MomentKernel {
    pub fn toy_gamma() -> Self {
        Self {
            kind: KernelKind::ToyGamma,
            pole_locations: vec![Complex64::new(-1.0, 0.0)],
        }
    }

    pub fn toy_chi() -> Self {
        Self {
            kind: KernelKind::ToyChi,
            pole_locations: vec![Complex64::new(0.0, 0.0)],
        }
    }

    /// Fails if `z` lies within `radius` of any pole.
    pub fn check_poles(&self, z: Complex64, radius: f64) -> Result<()> {
        for &pole in &self.pole_locations {
            let distance = (z - pole).norm();
            if distance.is_nan() || distance <= radius {
                return Err(Error::Pole {
                    pole,
                    at: z,
                    distance,
                });
            }
        }
        Ok(())
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(domain(format!("kernel argument must be finite, got {z}")));
        }
        self.check_poles(z, POLE_EXCLUSION)?;
        Ok(match self.kind {
            KernelKind::ToyGamma => (z + 1.0).inv(),
            KernelKind::ToyChi => z.inv() - 1.0,
        })
    }
}

/// Anomalous dimension gamma(N) = 1/(N+1).
pub fn gamma(n: Complex64) -> Result<Complex64> {
    MomentKernel::toy_gamma().eval(n)
}

/// Dual kernel chi(M) = 1/M - 1, the inverse of [`gamma`].
pub fn chi(m: Complex64) -> Result<Complex64> {
    MomentKernel::toy_chi().eval(m)
}

/// For each sample returns `(|chi(gamma(s)) - s|, |gamma(chi(s)) - s|)`.
///
/// Samples within [`SAMPLE_POLE_EXCLUSION`] of either pole come back as a
/// pole error in their own slot.
pub fn duality_residuals(samples: &[Complex64]) -> Vec<Result<(f64, f64)>> {
    let g = MomentKernel::toy_gamma();
    let c = MomentKernel::toy_chi();
    samples
        .iter()
        .map(|&s| {
            g.check_poles(s, SAMPLE_POLE_EXCLUSION)?;
            c.check_poles(s, SAMPLE_POLE_EXCLUSION)?;
            let forward = (c.eval(g.eval(s)?)? - s).norm();
            let backward = (g.eval(c.eval(s)?)? - s).norm();
            Ok((forward, backward))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplittingFunction {
    /// P(z) = z, the x-space partner of gamma(N) = 1/(N+1).
    ToyLinear,
}

impl SplittingFunction {
    pub fn eval(&self, z: f64) -> f64 {
        match self {
            SplittingFunction::ToyLinear => z,
        }
    }
}

/// Mellin moment `int_0^1 x^(N-1) P(x) dx` by adaptive quadrature.
///
/// The substitution x = v^2 softens the algebraic endpoint behaviour at
/// x = 0 before the integral is handed to the adaptive rule.
pub fn mellin_of_splitting(p: SplittingFunction, n: Complex64, tol: f64) -> Result<Complex64> {
    if !(n.re > 0.0 && n.re.is_finite() && n.im.is_finite()) {
        return Err(domain(format!("Mellin moment needs Re(N) > 0, got {n}")));
    }
    let exponent = n * 2.0 - 1.0;
    let integrand = |v: f64| {
        if v <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        (exponent * v.ln()).exp() * (2.0 * p.eval(v * v))
    };
    let r = quadrature::integrate(integrand, 0.0, 1.0, tol)?;
    Ok(r.value)
}
