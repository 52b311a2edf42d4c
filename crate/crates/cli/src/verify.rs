//! The invariant battery behind `verify`: every check reports its worst
//! residual against a limit.

use std::fmt::Write as _;

use mellin_dglap::dual_representation::{dual_ode_residual, moment_ode_residual};
use mellin_dglap::evolution::dglap_residual_xspace;
use mellin_dglap::mellin_inversion::{build_vertical_contour, invert_direct, ORACLE_TOL};
use mellin_dglap::moment_kernels::{
    duality_residuals, gamma, mellin_of_splitting, SplittingFunction, SAMPLE_POLE_EXCLUSION,
};
use mellin_dglap::running_coupling::{evaluate, CouplingModel};
use mellin_dglap::{phi_closed_form, Complex64, EvolutionPoint, LambertBranch, Method};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::NumericConfig;
use crate::coupling::{default_q2_min, log_grid, LAMBERT_RESIDUAL_LIMIT};
use crate::scan::{run_scan, ScanRequest, DEFAULT_U, DEFAULT_X};
use crate::CliError;

const SHRINK_TOLERANCE: f64 = 0.2;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub worst: f64,
    pub limit: f64,
    pub passed: bool,
    /// First failing case or evaluation error, if any.
    pub note: Option<String>,
}

impl Check {
    fn bounded(name: &'static str, worst: f64, limit: f64, note: Option<String>) -> Self {
        Self {
            name,
            worst,
            limit,
            passed: note.is_none() && worst <= limit,
            note,
        }
    }
}

/// Tracks the worst value seen plus the first failing case.
struct Worst {
    value: f64,
    note: Option<String>,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: 0.0,
            note: None,
        }
    }

    fn record(&mut self, v: f64, limit: f64, label: impl FnOnce() -> String) {
        if (v.is_nan() || v > limit) && self.note.is_none() {
            self.note = Some(format!("{}: {v:e}", label()));
        }
        if v > self.value || v.is_nan() {
            self.value = v;
        }
    }

    fn error(&mut self, msg: String) {
        self.value = f64::NAN;
        self.note.get_or_insert(msg);
    }

    fn into_check(self, name: &'static str, limit: f64) -> Check {
        Check::bounded(name, self.value, limit, self.note)
    }
}

fn grid_points() -> Vec<(f64, f64)> {
    DEFAULT_X
        .iter()
        .flat_map(|&x| DEFAULT_U.iter().map(move |&u| (x, u)))
        .collect()
}

fn four_way(cfg: &NumericConfig) -> Result<Vec<Check>, CliError> {
    let out = run_scan(&ScanRequest {
        x_values: DEFAULT_X.to_vec(),
        u_values: DEFAULT_U.to_vec(),
        methods: vec![Method::Direct, Method::Dual, Method::Mapped],
        numeric: *cfg,
    })?;
    let names = [
        (Method::Direct, "four-way agreement: direct"),
        (Method::Dual, "four-way agreement: dual"),
        (Method::Mapped, "four-way agreement: mapped"),
    ];
    Ok(names
        .into_iter()
        .map(|(method, name)| {
            let mut worst = Worst::new();
            for r in out.records.iter().filter(|r| r.method == method) {
                worst.record(
                    r.deviation_from_oracle,
                    method.acceptance_threshold(),
                    || format!("x={} u={}", r.x, r.u),
                );
            }
            worst.into_check(name, method.acceptance_threshold())
        })
        .collect())
}

fn boundaries(cfg: &NumericConfig) -> Result<Check, CliError> {
    const LIMIT: f64 = 1e-10;
    let run = |x: Vec<f64>, u: Vec<f64>, methods: Vec<Method>| {
        run_scan(&ScanRequest {
            x_values: x,
            u_values: u,
            methods,
            numeric: *cfg,
        })
    };
    let mut worst = Worst::new();
    let at_unit_u = run(DEFAULT_X.to_vec(), vec![1.0], Method::ALL.to_vec())?;
    // the contour routes need x < 1, so x = 1 only goes through dual and oracle
    let at_unit_x = run(
        vec![1.0],
        DEFAULT_U.to_vec(),
        vec![Method::Dual, Method::Oracle],
    )?;
    for (out, expected) in [(&at_unit_u, None), (&at_unit_x, Some(1.0))] {
        for msg in &out.failures {
            worst.error(msg.clone());
        }
        for r in &out.records {
            let target = expected.unwrap_or(r.x);
            worst.record((r.value - target).abs(), LIMIT, || {
                format!("x={} u={} {}", r.x, r.u, r.method)
            });
        }
    }
    Ok(worst.into_check("boundaries phi(x,1)=x, phi(1,u)=1", LIMIT))
}

fn duality(rng: &mut ChaCha8Rng) -> Check {
    const LIMIT: f64 = 1e-12;
    let mut samples = Vec::with_capacity(100);
    while samples.len() < 100 {
        let s = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        if s.norm() > SAMPLE_POLE_EXCLUSION && (s + 1.0).norm() > SAMPLE_POLE_EXCLUSION {
            samples.push(s);
        }
    }
    let mut worst = Worst::new();
    for (s, r) in samples.iter().zip(duality_residuals(&samples)) {
        match r {
            Ok((a, b)) => worst.record(a.max(b) / (1.0 + s.norm()), LIMIT, || format!("s={s}")),
            Err(e) => worst.error(format!("s={s}: {e}")),
        }
    }
    worst.into_check("duality round trip", LIMIT)
}

fn mellin_pair(rng: &mut ChaCha8Rng, cfg: &NumericConfig) -> Check {
    const LIMIT: f64 = 1e-10;
    let mut worst = Worst::new();
    for i in 0..50 {
        let re = rng.gen_range(0.5..10.0);
        let im = if i % 10 == 0 {
            0.0
        } else {
            rng.gen_range(-5.0..5.0)
        };
        let n = Complex64::new(re, im);
        let r = mellin_of_splitting(SplittingFunction::ToyLinear, n, cfg.quad_tol)
            .and_then(|v| Ok((v - gamma(n)?).norm()));
        match r {
            Ok(d) => worst.record(d, LIMIT, || format!("N={n}")),
            Err(e) => worst.error(format!("N={n}: {e}")),
        }
    }
    worst.into_check("Mellin pair of P(x) = x", LIMIT)
}

fn shrink_distance(coarse: f64, fine: f64) -> f64 {
    ((coarse / fine) / 4.0 - 1.0).abs()
}

fn dglap(cfg: &NumericConfig) -> Vec<Check> {
    const LIMIT: f64 = 1e-5;
    let h = cfg.fd_step;
    let results: Vec<_> = grid_points()
        .into_par_iter()
        .filter(|&(_, u)| u > 1.0)
        .map(|(x, u)| {
            let r = dglap_residual_xspace(x, u, h, cfg.quad_tol).and_then(|coarse| {
                Ok((coarse, dglap_residual_xspace(x, u, h / 2.0, cfg.quad_tol)?))
            });
            (x, u, r)
        })
        .collect();
    let mut residual = Worst::new();
    let mut shrink = Worst::new();
    for (x, u, r) in results {
        match r {
            Ok((coarse, fine)) => {
                residual.record(coarse, LIMIT, || format!("x={x} u={u}"));
                shrink.record(shrink_distance(coarse, fine), SHRINK_TOLERANCE, || {
                    format!("x={x} u={u}")
                });
            }
            Err(e) => {
                residual.error(format!("x={x} u={u}: {e}"));
                shrink.error(format!("x={x} u={u}: {e}"));
            }
        }
    }
    vec![
        residual.into_check("x-space DGLAP residual", LIMIT),
        shrink.into_check(
            "x-space DGLAP step halving (|ratio/4 - 1|)",
            SHRINK_TOLERANCE,
        ),
    ]
}

fn uniform_log_grid(start: f64, step: f64, n: usize) -> Vec<f64> {
    (0..n).map(|j| (start + j as f64 * step).exp()).collect()
}

fn ode_residuals(rng: &mut ChaCha8Rng, cfg: &NumericConfig) -> Vec<Check> {
    const LIMIT: f64 = 1e-6;
    const POINTS: usize = 100;
    let h = cfg.fd_step;
    // keep the whole x grid below 1 whatever the step
    let x_start = -1.0 - POINTS as f64 * h;
    let x_grid = uniform_log_grid(x_start, h, POINTS);
    let x_half = uniform_log_grid(x_start, h / 2.0, 2 * POINTS - 1);
    let u_grid = uniform_log_grid(0.0, h, POINTS);
    let u_half = uniform_log_grid(0.0, h / 2.0, 2 * POINTS - 1);

    let mut residual = Worst::new();
    let mut shrink = Worst::new();
    let mut take =
        |label: String, coarse: mellin_dglap::Result<f64>, fine: mellin_dglap::Result<f64>| {
            match coarse.and_then(|c| Ok((c, fine?))) {
                Ok((c, f)) => {
                    residual.record(c, LIMIT, || label.clone());
                    shrink.record(shrink_distance(c, f), SHRINK_TOLERANCE, || label);
                }
                Err(e) => {
                    residual.error(format!("{label}: {e}"));
                    shrink.error(format!("{label}: {e}"));
                }
            }
        };

    // Dual moments stay away from M = 1, where chi vanishes and the
    // residual is pure roundoff with no step dependence.
    let mut count = 0;
    while count < 20 {
        let m = Complex64::new(rng.gen_range(0.5..2.0), rng.gen_range(-0.5..0.5));
        if (m - 1.0).norm() < 0.15 {
            continue;
        }
        take(
            format!("M={m}"),
            dual_ode_residual(m, &x_grid),
            dual_ode_residual(m, &x_half),
        );
        count += 1;
    }
    for _ in 0..20 {
        let n = Complex64::new(rng.gen_range(0.0..4.0), rng.gen_range(-2.0..2.0));
        take(
            format!("N={n}"),
            moment_ode_residual(n, &u_grid),
            moment_ode_residual(n, &u_half),
        );
    }
    vec![
        residual.into_check("dual and moment ODE residuals", LIMIT),
        shrink.into_check("ODE step halving (|ratio/4 - 1|)", SHRINK_TOLERANCE),
    ]
}

fn coupling() -> Result<Vec<Check>, CliError> {
    let grid = log_grid(default_q2_min(), 1e8, 200)?;
    let mut residual = Worst::new();
    for branch in [
        LambertBranch::LOWER,
        LambertBranch::PRINCIPAL,
        LambertBranch::UPPER,
    ] {
        let model = CouplingModel::new(3, branch).expect("N = 3 is valid");
        for &q in grid.iter().chain(&[0.5, 1.0, 1.5]) {
            match evaluate(&model, q) {
                Ok(v) => residual.record(v.lambert_residual, LAMBERT_RESIDUAL_LIMIT, || {
                    format!("branch {branch} q2_ratio={q}")
                }),
                Err(e) => residual.error(format!("branch {branch} q2_ratio={q}: {e}")),
            }
        }
    }

    let model = CouplingModel::new(3, LambertBranch::LOWER).expect("N = 3 is valid");
    let mut violations = 0usize;
    let mut first = None;
    let mut prev = f64::INFINITY;
    for &q in &grid {
        let ok = match evaluate(&model, q) {
            Ok(v) => {
                let a = v.alpha;
                let ok = a.im == 0.0 && a.re > 0.0 && a.re < prev;
                prev = a.re;
                ok
            }
            Err(_) => false,
        };
        if !ok {
            violations += 1;
            first.get_or_insert(format!("q2_ratio={q}"));
        }
    }
    Ok(vec![
        residual.into_check("Lambert W round trip", LAMBERT_RESIDUAL_LIMIT),
        Check::bounded(
            "coupling real, positive, decreasing (violations)",
            violations as f64,
            0.0,
            first,
        ),
    ])
}

fn anchor_independence(cfg: &NumericConfig) -> Result<Check, CliError> {
    let anchors = [-0.5, 0.0, 0.5, 1.0];
    let contours = anchors
        .iter()
        .map(|&c| build_vertical_contour(c, cfg.contour_extent, cfg.contour_nodes))
        .collect::<mellin_dglap::Result<Vec<_>>>()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let points = [
        (0.01, 100.0),
        (0.1, 10.0),
        (0.3, 25.0),
        (0.5, 4.0),
        (0.9, 2.0),
    ];
    let mut worst = Worst::new();
    for (x, u) in points {
        let p = EvolutionPoint::new(x, u).expect("fixed grid point");
        let reports: mellin_dglap::Result<Vec<_>> = contours
            .par_iter()
            .map(|c| invert_direct(&p, c, true))
            .collect();
        let reports = match reports {
            Ok(r) => r,
            Err(e) => {
                worst.error(format!("x={x} u={u}: {e}"));
                continue;
            }
        };
        for i in 0..reports.len() {
            for j in i + 1..reports.len() {
                let gap = (reports[i].value - reports[j].value).abs();
                let allowed = reports[i].error_estimate + reports[j].error_estimate;
                worst.record(gap / allowed, 1.0, || {
                    format!("x={x} u={u} c={} vs c={}", anchors[i], anchors[j])
                });
            }
        }
    }
    Ok(worst.into_check("contour anchor independence (gap / estimate)", 1.0))
}

fn oracle_self_check() -> Check {
    // I0(2 ln 10) by an independent route: the integral representation
    // (1/pi) int_0^pi exp(z cos theta) d theta with a composite rule.
    const LIMIT: f64 = 1e-12;
    let p = EvolutionPoint::new(0.1, 10.0).expect("fixed point");
    let z = 2.0 * 10f64.ln();
    let n = 2000;
    let integral = (0..n)
        .map(|k| {
            let theta = std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
            (z * theta.cos()).exp()
        })
        .sum::<f64>()
        / n as f64;
    let mut worst = Worst::new();
    match phi_closed_form(&p, ORACLE_TOL) {
        Ok(s) => worst.record((s.value / 0.1 - integral).abs() / integral, LIMIT, || {
            "x=0.1 u=10".into()
        }),
        Err(e) => worst.error(e.to_string()),
    }
    worst.into_check("closed-form oracle vs integral form", LIMIT)
}

/// Runs the whole battery. Usage errors in the configuration abort; any
/// numerical problem shows up as a failed check.
pub fn run_residual_suite(cfg: &NumericConfig, seed: u64) -> Result<Vec<Check>, CliError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = vec![oracle_self_check()];
    checks.extend(four_way(cfg)?);
    checks.push(boundaries(cfg)?);
    checks.push(duality(&mut rng));
    checks.push(mellin_pair(&mut rng, cfg));
    checks.extend(dglap(cfg));
    checks.extend(ode_residuals(&mut rng, cfg));
    checks.extend(coupling()?);
    checks.push(anchor_independence(cfg)?);
    Ok(checks)
}

pub fn render_table(checks: &[Check]) -> String {
    let width = checks
        .iter()
        .map(|c| c.name.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:>10}  {:>10}  status",
        "check", "worst", "limit"
    );
    for c in checks {
        let _ = write!(
            out,
            "{:<width$}  {:>10.3e}  {:>10.3e}  {}",
            c.name,
            c.worst,
            c.limit,
            if c.passed { "PASS" } else { "FAIL" }
        );
        if let (false, Some(note)) = (c.passed, &c.note) {
            let _ = write!(out, "  ({note})");
        }
        out.push('\n');
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(
        out,
        "{} of {} checks passed",
        checks.len() - failed,
        checks.len()
    );
    out
}
