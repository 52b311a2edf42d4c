use std::collections::BTreeSet;

use mellin_dglap::dual_representation::eval_dual;
use mellin_dglap::mellin_inversion::{invert_direct, invert_mapped, Contour, ORACLE_TOL};
use mellin_dglap::{phi_closed_form, EvolutionPoint, Method, MethodReport};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::NumericConfig;
use crate::output::{float17, Row};
use crate::CliError;

pub const DEFAULT_X: [f64; 9] = [0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.8, 0.9];
pub const DEFAULT_U: [f64; 7] = [1.0, 2.0, 4.0, 10.0, 25.0, 50.0, 100.0];

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRequest {
    pub x_values: Vec<f64>,
    pub u_values: Vec<f64>,
    pub methods: Vec<Method>,
    pub numeric: NumericConfig,
}

impl ScanRequest {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.x_values.is_empty() || self.u_values.is_empty() {
            return Err(CliError::Usage(
                "the grid needs at least one x and one u".into(),
            ));
        }
        if self.methods.is_empty() {
            return Err(CliError::Usage("at least one method is required".into()));
        }
        if let Some(x) = self.x_values.iter().find(|&&x| !(x > 0.0 && x <= 1.0)) {
            return Err(CliError::Usage(format!("x must lie in (0, 1], got {x}")));
        }
        if let Some(u) = self.u_values.iter().find(|&&u| !(u.is_finite() && u > 0.0)) {
            return Err(CliError::Usage(format!(
                "u must be positive and finite, got {u}"
            )));
        }
        self.numeric.validate()
    }
}

/// One output line. A record whose method failed carries NaN in the float
/// columns and has `passed` unset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub x: f64,
    pub u: f64,
    #[serde(serialize_with = "method_name")]
    pub method: Method,
    pub value: f64,
    pub error_estimate: f64,
    pub nodes_or_terms: usize,
    pub deviation_from_oracle: f64,
    #[serde(skip)]
    pub passed: bool,
}

fn method_name<S: serde::Serializer>(m: &Method, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(m.name())
}

impl Row for Record {
    const HEADER: &'static str =
        "x,u,method,value,error_estimate,nodes_or_terms,deviation_from_oracle";

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            float17(self.x),
            float17(self.u),
            self.method,
            float17(self.value),
            float17(self.error_estimate),
            self.nodes_or_terms,
            float17(self.deviation_from_oracle)
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScanOutcome {
    pub records: Vec<Record>,
    /// One message per failed evaluation.
    pub failures: Vec<String>,
}

impl ScanOutcome {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.records.iter().all(|r| r.passed)
    }
}

fn evaluate(
    method: Method,
    p: &EvolutionPoint,
    contour: &Contour,
    cfg: &NumericConfig,
) -> mellin_dglap::Result<MethodReport> {
    match method {
        Method::Direct => invert_direct(p, contour, true),
        Method::Mapped => invert_mapped(p, cfg.cheb_nodes),
        Method::Dual => eval_dual(p, &cfg.dual()),
        Method::Oracle => {
            let s = phi_closed_form(p, ORACLE_TOL)?;
            Ok(MethodReport::new(
                Method::Oracle,
                s.value,
                s.truncation_estimate,
                s.terms_used,
                s.value,
            ))
        }
    }
}

fn sorted_unique(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Evaluates every (x, u, method) combination. Grid points run in parallel;
/// the records come back sorted by x, then u, then method.
pub fn run_scan(req: &ScanRequest) -> Result<ScanOutcome, CliError> {
    req.validate()?;
    let methods: BTreeSet<Method> = req.methods.iter().copied().collect();
    let contour = req.numeric.contour()?;
    let xs = sorted_unique(&req.x_values);
    let us = sorted_unique(&req.u_values);
    let points: Vec<(f64, f64)> = xs
        .iter()
        .flat_map(|&x| us.iter().map(move |&u| (x, u)))
        .collect();

    let per_point: Vec<Vec<(Record, Option<String>)>> = points
        .par_iter()
        .map(|&(x, u)| {
            // validated above, so the point is in range
            let p = EvolutionPoint::new(x, u).expect("validated grid point");
            methods
                .iter()
                .map(
                    |&method| match evaluate(method, &p, &contour, &req.numeric) {
                        Ok(r) => (
                            Record {
                                x,
                                u,
                                method,
                                value: r.value,
                                error_estimate: r.error_estimate,
                                nodes_or_terms: r.nodes_or_terms,
                                deviation_from_oracle: r.deviation_from_oracle,
                                passed: r.within_threshold(),
                            },
                            None,
                        ),
                        Err(e) => (
                            Record {
                                x,
                                u,
                                method,
                                value: f64::NAN,
                                error_estimate: f64::NAN,
                                nodes_or_terms: 0,
                                deviation_from_oracle: f64::NAN,
                                passed: false,
                            },
                            Some(format!("x={x} u={u} {method}: {e}")),
                        ),
                    },
                )
                .collect()
        })
        .collect();

    let mut outcome = ScanOutcome::default();
    for (record, failure) in per_point.into_iter().flatten() {
        outcome.records.push(record);
        outcome.failures.extend(failure);
    }
    // already in order, sorting keeps the guarantee independent of the above
    outcome.records.sort_by(|a, b| {
        a.x.total_cmp(&b.x)
            .then(a.u.total_cmp(&b.u))
            .then(a.method.cmp(&b.method))
    });
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn request(x: &[f64], u: &[f64], methods: &[Method]) -> ScanRequest {
        ScanRequest {
            x_values: x.to_vec(),
            u_values: u.to_vec(),
            methods: methods.to_vec(),
            numeric: NumericConfig::default(),
        }
    }

    #[test]
    fn unit_scale_gives_x_everywhere() {
        let out = run_scan(&request(&[0.5], &[1.0], &Method::ALL)).unwrap();
        assert!(out.all_passed());
        assert_eq!(out.records.len(), 4);
        for r in &out.records {
            assert_eq!(r.value, 0.5);
            assert_eq!(r.deviation_from_oracle, 0.0);
        }
    }

    #[test]
    fn records_are_sorted() {
        let out = run_scan(&request(
            &[0.9, 0.1],
            &[10.0, 2.0],
            &[Method::Oracle, Method::Dual],
        ))
        .unwrap();
        let keys: Vec<_> = out.records.iter().map(|r| (r.x, r.u, r.method)).collect();
        assert_eq!(
            keys,
            vec![
                (0.1, 2.0, Method::Dual),
                (0.1, 2.0, Method::Oracle),
                (0.1, 10.0, Method::Dual),
                (0.1, 10.0, Method::Oracle),
                (0.9, 2.0, Method::Dual),
                (0.9, 2.0, Method::Oracle),
                (0.9, 10.0, Method::Dual),
                (0.9, 10.0, Method::Oracle),
            ]
        );
    }

    #[test]
    fn contour_routes_flag_x_equal_one() {
        let out = run_scan(&request(&[1.0], &[5.0], &[Method::Mapped, Method::Dual])).unwrap();
        assert!(!out.all_passed());
        assert_eq!(out.failures.len(), 1);
        let mapped = out
            .records
            .iter()
            .find(|r| r.method == Method::Mapped)
            .unwrap();
        assert!(mapped.value.is_nan() && !mapped.passed);
        let dual = out
            .records
            .iter()
            .find(|r| r.method == Method::Dual)
            .unwrap();
        assert_eq!(dual.value, 1.0);
    }

    #[test]
    fn invalid_requests() {
        assert!(matches!(
            run_scan(&request(&[0.5], &[2.0], &[])),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            run_scan(&request(&[], &[2.0], &Method::ALL)),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            run_scan(&request(&[1.5], &[2.0], &Method::ALL)),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            run_scan(&request(&[0.5], &[0.0], &Method::ALL)),
            Err(CliError::Usage(_))
        ));
    }
}
