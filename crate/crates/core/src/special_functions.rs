//! Closed-form reference functions: the order-zero modified Bessel series,
//! its signed-argument generalization, and the Lambert W function on the
//! three branches {-1, 0, +1}.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Hard cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 500;

const LAMBERT_MAX_ITER: usize = 64;

/// Radius around -1/e inside which the branch-point expansion is used
/// instead of iteration.
const BRANCH_POINT_RADIUS: f64 = 1e-4;

// 1/e split into a double plus a correction, so that z + 1/e keeps its
// significant digits when z sits next to the branch point.
const INV_E_HI: f64 = 0.367_879_441_171_442_33;
const INV_E_LO: f64 = -1.242_875_367_278_836_3e-17;

/// Coefficients of W(p) = sum mu_k p^k around the branch point, with
/// p = ±sqrt(2(e z + 1)).
const BRANCH_POINT_COEFFS: [f64; 14] = [
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
    680_863.0 / 43_545_600.0,
    -1963.0 / 204_120.0,
    226_287_557.0 / 37_623_398_400.0,
    -0.003_811_298_034_892,
    0.002_440_877_991_143_983,
    -0.001_576_930_344_686_784,
    0.001_026_263_320_507_607_6,
];

/// Outcome of a truncated power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    /// Number of terms summed (the k = 0 term counts).
    pub terms_used: usize,
    /// Magnitude of the first omitted term.
    pub truncation_estimate: f64,
}

/// `sum_k t^k / (k!)^2`, stopped once the next term drops below
/// `tol * max(1, |partial sum|)` and the terms are no longer growing.
fn inverse_factorial_square_series(t: f64, tol: f64) -> Result<SeriesResult> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..=MAX_SERIES_TERMS {
        let kf = k as f64;
        let next = term * t / (kf * kf);
        if next.abs() <= term.abs() && next.abs() < tol * sum.abs().max(1.0) {
            return Ok(SeriesResult {
                value: sum,
                terms_used: k,
                truncation_estimate: next.abs(),
            });
        }
        sum += next;
        term = next;
    }
    Err(Error::Truncation {
        partial_sum: sum,
        terms: MAX_SERIES_TERMS,
    })
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "tolerance must be positive and finite, got {tol}"
        )))
    }
}

/// Modified Bessel function I0(z) for real z >= 0 from its power series.
pub fn bessel_i0(z: f64, tol: f64) -> Result<SeriesResult> {
    check_tol(tol)?;
    if !z.is_finite() || z < 0.0 {
        return Err(domain(format!("bessel_i0 needs a finite z >= 0, got {z}")));
    }
    let half = 0.5 * z;
    inverse_factorial_square_series(half * half, tol)
}

/// `sum_k t^k / (k!)^2` for any real t.
///
/// For t >= 0 this is I0(2 sqrt(t)); for t < 0 it is J0(2 sqrt(-t)), an
/// alternating series whose error is bounded by the first omitted term once
/// the terms decrease.
pub fn phi_series_signed(t: f64, tol: f64) -> Result<SeriesResult> {
    check_tol(tol)?;
    if !t.is_finite() {
        return Err(domain(format!("series argument must be finite, got {t}")));
    }
    inverse_factorial_square_series(t, tol)
}

/// Branch index of the Lambert W function. Only -1, 0 and +1 exist here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambertBranch(i8);

impl LambertBranch {
    pub const LOWER: Self = Self(-1);
    pub const PRINCIPAL: Self = Self(0);
    pub const UPPER: Self = Self(1);

    pub fn new(index: i32) -> Result<Self> {
        match index {
            -1 => Ok(Self::LOWER),
            0 => Ok(Self::PRINCIPAL),
            1 => Ok(Self::UPPER),
            other => Err(domain(format!(
                "Lambert branch must be -1, 0 or 1, got {other}"
            ))),
        }
    }

    pub fn index(self) -> i32 {
        self.0 as i32
    }
}

impl TryFrom<i32> for LambertBranch {
    type Error = Error;

    fn try_from(index: i32) -> Result<Self> {
        Self::new(index)
    }
}

impl std::fmt::Display for LambertBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `z + 1/e` without cancellation.
fn offset_from_branch_point(z: Complex64) -> Complex64 {
    Complex64::new((z.re + INV_E_HI) + INV_E_LO, z.im)
}

fn branch_point_series(p: Complex64, terms: usize) -> Complex64 {
    BRANCH_POINT_COEFFS[..terms]
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * p + c)
}

/// The expansion parameter p for `branch` near -1/e, or `None` when the
/// branch does not touch the branch point from this side of the real axis.
///
/// Branch 0 meets -1/e from both sides; branch -1 from the upper half plane
/// (closed, so the real segment (-1/e, 0) belongs to it) and branch +1 from
/// the open lower half plane.
fn branch_point_parameter(branch: LambertBranch, z: Complex64) -> Option<Complex64> {
    let root = (offset_from_branch_point(z) * (2.0 * std::f64::consts::E)).sqrt();
    match branch.0 {
        0 => Some(root),
        -1 if z.im >= 0.0 => Some(-root),
        1 if z.im < 0.0 => Some(-root),
        _ => None,
    }
}

fn initial_guess(branch: LambertBranch, z: Complex64) -> Complex64 {
    if offset_from_branch_point(z).norm() < 0.3 {
        if let Some(p) = branch_point_parameter(branch, z) {
            return branch_point_series(p, 4);
        }
    }
    if branch.0 == 0 {
        if z.im < 0.0 {
            // W_0(conj z) = conj W_0(z)
            return initial_guess(branch, z.conj()).conj();
        }
        if z.norm() < 0.5 {
            return z * (1.0 - z * (1.0 - z * (1.5 - z * (8.0 / 3.0))));
        }
        // the Winitzki form degenerates where ln(1 + z) blows up
        if (z + 1.0).norm() > 0.25 {
            let l = (z + 1.0).ln();
            return l * (1.0 - (l + 1.0).ln() / (l + 2.0));
        }
    }
    let two_pi_k = Complex64::new(0.0, 2.0 * std::f64::consts::PI * branch.0 as f64);
    let l1 = z.ln() + two_pi_k;
    let l2 = l1.ln();
    l1 - l2 + l2 / l1
}

fn real_initial_guess(branch: LambertBranch, x: f64) -> f64 {
    let z = Complex64::new(x, 0.0);
    if offset_from_branch_point(z).norm() < 0.3 {
        if let Some(p) = branch_point_parameter(branch, z) {
            return branch_point_series(p, 4).re;
        }
    }
    if branch.0 == -1 {
        let l1 = (-x).ln();
        let l2 = (-l1).ln();
        return l1 - l2 + l2 / l1;
    }
    if x.abs() < 0.5 {
        x * (1.0 - x * (1.0 - x * (1.5 - x * (8.0 / 3.0))))
    } else if x < 3.0 {
        x.ln_1p() * 0.8
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}

/// Newton steps on w + ln w = ln z + 2 pi i k. Every root of this form lies
/// on branch k, so it walks a rough guess onto the right sheet before the
/// Halley polish.
fn refine_on_log_form(mut w: Complex64, z: Complex64, branch: LambertBranch) -> Complex64 {
    let target = z.ln() + Complex64::new(0.0, 2.0 * std::f64::consts::PI * branch.0 as f64);
    for _ in 0..LAMBERT_MAX_ITER {
        let g = w + w.ln() - target;
        let step = g / (1.0 + w.inv());
        if !(step.re.is_finite() && step.im.is_finite()) {
            break;
        }
        w -= step;
        if step.norm() <= 1e-10 * w.norm() {
            break;
        }
    }
    w
}

fn residual(w: Complex64, z: Complex64) -> f64 {
    (w * w.exp() - z).norm()
}

fn halley(mut w: Complex64, z: Complex64, tol: f64) -> Result<Complex64> {
    let target = tol * (1.0 + z.norm());
    let mut last = f64::INFINITY;
    for _ in 0..LAMBERT_MAX_ITER {
        let ew = w.exp();
        let f = w * ew - z;
        last = f.norm();
        if last <= target {
            return Ok(w);
        }
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (wp1 * 2.0));
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        w -= step;
        if step.norm() <= 4.0 * f64::EPSILON * w.norm() {
            let r = residual(w, z);
            if r <= target {
                return Ok(w);
            }
            last = r;
            break;
        }
    }
    Err(Error::Iteration {
        iterations: LAMBERT_MAX_ITER,
        residual: last,
    })
}

/// Real-arithmetic Halley for the two real branches.
fn halley_real(mut w: f64, z: f64, tol: f64) -> Result<f64> {
    let target = tol * (1.0 + z.abs());
    let mut last = f64::INFINITY;
    for _ in 0..LAMBERT_MAX_ITER {
        let ew = w.exp();
        let f = w * ew - z;
        last = f.abs();
        if last <= target {
            return Ok(w);
        }
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        if !step.is_finite() {
            break;
        }
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs() {
            let r = (w * w.exp() - z).abs();
            if r <= target {
                return Ok(w);
            }
            last = r;
            break;
        }
    }
    Err(Error::Iteration {
        iterations: LAMBERT_MAX_ITER,
        residual: last,
    })
}

/// Lambert W on the given branch: the w with `w e^w = z`.
///
/// Branch 0 is the principal branch and branch -1 is real on (-1/e, 0).
/// Values on the branch cut are taken from the upper side; a signed-zero
/// imaginary part is treated as +0.
pub fn lambert_w(branch: LambertBranch, z: Complex64, tol: f64) -> Result<Complex64> {
    check_tol(tol)?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(domain(format!(
            "lambert_w needs a finite argument, got {z}"
        )));
    }
    let z = if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    };

    if z.re == 0.0 && z.im == 0.0 {
        return if branch.0 == 0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(domain(format!("W_{branch}(0) is not finite")))
        };
    }

    if z.im == 0.0 && branch.0 != 1 {
        let x = z.re;
        // -1/e to within rounding of the argument
        if (x + INV_E_HI).abs() <= 2.0 * f64::EPSILON * INV_E_HI {
            return Ok(Complex64::new(-1.0, 0.0));
        }
        let real_domain = match branch.0 {
            0 => x > -INV_E_HI,
            _ => x > -INV_E_HI && x < 0.0,
        };
        if real_domain {
            let offset = offset_from_branch_point(z);
            if offset.norm() < BRANCH_POINT_RADIUS {
                if let Some(p) = branch_point_parameter(branch, z) {
                    return Ok(Complex64::new(
                        branch_point_series(p, BRANCH_POINT_COEFFS.len()).re,
                        0.0,
                    ));
                }
            }
            return halley_real(real_initial_guess(branch, x), x, tol)
                .map(|w| Complex64::new(w, 0.0));
        }
    }

    if offset_from_branch_point(z).norm() < BRANCH_POINT_RADIUS {
        if let Some(p) = branch_point_parameter(branch, z) {
            let w = branch_point_series(p, BRANCH_POINT_COEFFS.len());
            if residual(w, z) <= tol * (1.0 + z.norm()) {
                return Ok(w);
            }
            return halley(w, z, tol);
        }
    }

    let mut guess = initial_guess(branch, z);
    if offset_from_branch_point(z).norm() >= 0.3 && !(branch.0 == 0 && z.norm() < 0.5) {
        guess = refine_on_log_form(guess, z, branch);
    }
    halley(guess, z, tol)
}
