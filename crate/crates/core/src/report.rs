use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error};

/// Evaluation route for phi(x, u). Variant order is the output sort order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Direct,
    Dual,
    Mapped,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Direct, Method::Dual, Method::Mapped, Method::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Dual => "dual",
            Method::Mapped => "mapped",
            Method::Oracle => "oracle",
        }
    }

    /// Largest relative deviation from the oracle a route may show.
    pub fn acceptance_threshold(self) -> f64 {
        match self {
            Method::Direct => 1e-6,
            Method::Mapped => 1e-10,
            Method::Dual => 1e-12,
            Method::Oracle => 0.0,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "direct" => Ok(Method::Direct),
            "dual" => Ok(Method::Dual),
            "mapped" => Ok(Method::Mapped),
            "oracle" => Ok(Method::Oracle),
            other => Err(domain(format!("unknown method '{other}'"))),
        }
    }
}

/// One route's value of phi(x, u) together with its self-reported accuracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodReport {
    pub method: Method,
    pub value: f64,
    pub error_estimate: f64,
    pub nodes_or_terms: usize,
    /// |value - oracle| / max(|oracle|, 1e-300)
    pub deviation_from_oracle: f64,
}

impl MethodReport {
    pub fn new(
        method: Method,
        value: f64,
        error_estimate: f64,
        nodes_or_terms: usize,
        oracle: f64,
    ) -> Self {
        Self {
            method,
            value,
            error_estimate,
            nodes_or_terms,
            deviation_from_oracle: relative_deviation(value, oracle),
        }
    }

    pub fn within_threshold(&self) -> bool {
        self.deviation_from_oracle <= self.method.acceptance_threshold()
    }
}

pub fn relative_deviation(value: f64, oracle: f64) -> f64 {
    (value - oracle).abs() / oracle.abs().max(1e-300)
}
