//! Inverse-Mellin evaluation of phi(x, u).
//!
//! Two routes are provided. [`invert_direct`] integrates
//! x^(-N) u^(1/(N+1)) / (N+1) along a vertical line Re N = c > -1 with the
//! trapezoid rule. [`invert_mapped`] uses the change of variable
//! N(M) = (M w - 1 + sqrt((M w + 1)^2 - 4 w^2)) / 2, under which the exponent
//! becomes M sqrt(t); after the contour is wrapped around the cut [-1, 1] the
//! integral is (1/pi) int_{-1}^{1} e^{2 s sqrt(t)} / sqrt(1 - s^2) ds, which
//! Chebyshev–Gauss quadrature integrates with spectral accuracy.
//!
//! Both routes use the inverse-Mellin normalization (1 / 2 pi i) int dN,
//! folded into the contour weights.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::kinematics::{phi_closed_form, EvolutionPoint};
use crate::report::{Method, MethodReport};

/// Series tolerance used when computing the oracle value for a report.
pub const ORACLE_TOL: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContourKind {
    /// N = c + i y, y in [-T, T]
    VerticalLine,
    /// The cut [-1, 1] of the mapped integrand, with Chebyshev weight.
    ChebyshevCut,
}

/// A discretized integration path: nodes and the matching complex weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    kind: ContourKind,
    anchor: f64,
    half_extent: f64,
    nodes: Vec<Complex64>,
    weights: Vec<Complex64>,
}

impl Contour {
    pub fn kind(&self) -> ContourKind {
        self.kind
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    pub fn half_extent(&self) -> f64 {
        self.half_extent
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    /// Weighted sum of `f` over the nodes.
    pub fn integrate<F>(&self, f: F) -> Complex64
    where
        F: Fn(Complex64) -> Complex64,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&z, &w)| w * f(z))
            .sum()
    }
}

/// Trapezoid discretization of the line Re N = `c`, |Im N| <= `half_extent`.
///
/// With dN = i dy the weight of an interior node is i dy / (2 pi i) = dy / 2 pi;
/// the two end nodes carry half of that.
pub fn build_vertical_contour(c: f64, half_extent: f64, n: usize) -> Result<Contour> {
    if !(c.is_finite() && c > -1.0) {
        return Err(domain(format!("contour anchor must exceed -1, got {c}")));
    }
    if !(half_extent.is_finite() && half_extent > 0.0) {
        return Err(domain(format!(
            "contour extent must be positive, got {half_extent}"
        )));
    }
    if n < 2 {
        return Err(domain(format!(
            "a vertical contour needs at least 2 nodes, got {n}"
        )));
    }
    let step = 2.0 * half_extent / (n - 1) as f64;
    let interior = Complex64::new(step / (2.0 * PI), 0.0);
    let nodes = (0..n)
        .map(|j| {
            // mirror the upper half so the node set is exactly symmetric
            let y = if 2 * j + 1 >= n {
                half_extent - (n - 1 - j) as f64 * step
            } else {
                -(half_extent - j as f64 * step)
            };
            Complex64::new(c, y)
        })
        .collect();
    let weights = (0..n)
        .map(|j| {
            if j == 0 || j == n - 1 {
                interior * 0.5
            } else {
                interior
            }
        })
        .collect();
    Ok(Contour {
        kind: ContourKind::VerticalLine,
        anchor: c,
        half_extent,
        nodes,
        weights,
    })
}

/// Chebyshev–Gauss rule for (1/pi) int_{-1}^{1} f(s) / sqrt(1 - s^2) ds:
/// nodes cos((2j - 1) pi / 2n), weights 1/n.
pub fn build_chebyshev_contour(n: usize) -> Result<Contour> {
    if n < 2 {
        return Err(domain(format!(
            "Chebyshev rule needs at least 2 nodes, got {n}"
        )));
    }
    let nodes = (1..=n)
        .map(|j| Complex64::new(((2 * j - 1) as f64 * PI / (2 * n) as f64).cos(), 0.0))
        .collect();
    let weights = vec![Complex64::new(1.0 / n as f64, 0.0); n];
    Ok(Contour {
        kind: ContourKind::ChebyshevCut,
        anchor: 0.0,
        half_extent: 1.0,
        nodes,
        weights,
    })
}

/// Defaults for the direct route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectConfig {
    pub anchor: f64,
    pub half_extent: f64,
    pub nodes: usize,
    pub subtract_leading: bool,
}

impl Default for DirectConfig {
    fn default() -> Self {
        Self {
            anchor: 0.5,
            half_extent: 4000.0,
            nodes: 160_001,
            subtract_leading: true,
        }
    }
}

impl DirectConfig {
    pub fn contour(&self) -> Result<Contour> {
        build_vertical_contour(self.anchor, self.half_extent, self.nodes)
    }
}

/// e^z - 1 without cancellation for small |z|.
fn exp_m1(z: Complex64) -> Complex64 {
    let (s, c) = z.im.sin_cos();
    let half_sin = (0.5 * z.im).sin();
    let ea = z.re.exp();
    Complex64::new(z.re.exp_m1() * c - 2.0 * half_sin * half_sin, ea * s)
}

/// u^(1/(N+1)) / (N+1), optionally with the leading 1/(N+1) removed.
fn moment_factor(ln_u: f64, n: Complex64, subtract_leading: bool) -> Complex64 {
    let s = n + 1.0;
    let e = s.inv() * ln_u;
    let numerator = if subtract_leading { exp_m1(e) } else { e.exp() };
    numerator / s
}

fn check_open_unit_x(p: &EvolutionPoint) -> Result<()> {
    if p.x() >= 1.0 {
        return Err(domain(
            "contour routes need x < 1 (ln(1/x) = 0 degenerates the contour); use the oracle",
        ));
    }
    Ok(())
}

/// Direct inverse-Mellin quadrature of
/// (1 / 2 pi i) int x^(-N) e^(ln u / (N+1)) / (N+1) dN along `contour`.
///
/// With `subtract_leading` the integrand drops its 1/(N+1) part, whose
/// integral is the residue x at N = -1, so the remainder decays like
/// 1/|Im N|^2. The error estimate adds the trapezoid difference between `n`
/// and `n/2` nodes to the magnitude of the leading neglected tail beyond
/// |Im N| = T.
pub fn invert_direct(
    p: &EvolutionPoint,
    contour: &Contour,
    subtract_leading: bool,
) -> Result<MethodReport> {
    check_open_unit_x(p)?;
    if p.u() < 1.0 {
        return Err(domain(format!(
            "direct inversion needs u >= 1, got {}; use the signed series",
            p.u()
        )));
    }
    if contour.kind != ContourKind::VerticalLine {
        return Err(Error::Contract(
            "invert_direct needs a vertical-line contour".into(),
        ));
    }
    if contour.anchor.is_nan() || contour.anchor <= -1.0 {
        return Err(Error::Contract(format!(
            "contour anchor {} is not right of the pole at -1",
            contour.anchor
        )));
    }

    let ln_u = p.ln_u();
    let ln_inv_x = p.ln_inv_x();
    let integrand = |n: Complex64| (n * ln_inv_x).exp() * moment_factor(ln_u, n, subtract_leading);

    let n = contour.node_count();
    let values: Vec<Complex64> = contour.nodes.iter().map(|&z| integrand(z)).collect();
    let fine: Complex64 = values
        .iter()
        .zip(&contour.weights)
        .map(|(f, w)| f * w)
        .sum();
    let coarse = if n >= 3 && (n - 1).is_multiple_of(2) {
        // every other node of a uniform trapezoid rule is the rule with twice the step
        values
            .iter()
            .zip(&contour.weights)
            .step_by(2)
            .map(|(f, w)| f * w)
            .sum::<Complex64>()
            * 2.0
    } else {
        let half = build_vertical_contour(contour.anchor, contour.half_extent, (n / 2).max(2))?;
        half.integrate(integrand)
    };

    let end = Complex64::new(contour.anchor, contour.half_extent);
    let tail = (contour.anchor * ln_inv_x).exp()
        * moment_factor(ln_u, end, subtract_leading).norm()
        / (PI * ln_inv_x);

    let residue = if subtract_leading { p.x() } else { 0.0 };
    let value = fine.re + residue;
    let error_estimate = (fine - coarse).norm() + tail;
    let oracle = phi_closed_form(p, ORACLE_TOL)?.value;
    Ok(MethodReport::new(
        Method::Direct,
        value,
        error_estimate,
        n,
        oracle,
    ))
}

/// Mapped-contour route in its collapsed form on the cut [-1, 1].
///
/// Accepts u = 1, where t = 0 and the integral is exactly 1 even though w
/// degenerates.
pub fn invert_mapped(p: &EvolutionPoint, n: usize) -> Result<MethodReport> {
    check_open_unit_x(p)?;
    if p.u() < 1.0 {
        return Err(domain(format!(
            "mapped route needs u >= 1, got {}; use phi_series_signed for u < 1",
            p.u()
        )));
    }
    if n < 4 {
        return Err(domain(format!("mapped route needs n >= 4, got {n}")));
    }
    let two_root_t = 2.0 * p.t().sqrt();
    let rule = |m: usize| -> Result<f64> {
        let contour = build_chebyshev_contour(m)?;
        Ok(contour.integrate(|s| (s * two_root_t).exp()).re)
    };
    let fine = rule(n)?;
    let coarse = rule(n / 2)?;
    let value = p.x() * fine;
    // once the rule has converged the difference sinks below summation roundoff
    let roundoff = n as f64 * f64::EPSILON * fine.abs();
    let oracle = phi_closed_form(p, ORACLE_TOL)?.value;
    Ok(MethodReport::new(
        Method::Mapped,
        value,
        p.x() * ((fine - coarse).abs() + roundoff),
        n,
        oracle,
    ))
}

/// The map N(M) = (M w - 1 + sqrt((M w + 1)^2 - 4 w^2)) / 2 on the principal
/// square-root sheet.
pub fn mapped_moment(m: Complex64, w: f64) -> Complex64 {
    let mw = m * w;
    let root = ((mw + 1.0) * (mw + 1.0) - 4.0 * w * w).sqrt();
    (mw - 1.0 + root) * 0.5
}

/// Inverse of [`mapped_moment`]: M(N) = (s + w^2 / s - 1) / w with s = N + 1.
pub fn mapped_variable(n: Complex64, w: f64) -> Complex64 {
    let s = n + 1.0;
    (s + s.inv() * (w * w) - 1.0) / w
}
