use mellin_dglap::dual_representation::DualSeriesConfig;
use mellin_dglap::mellin_inversion::{build_vertical_contour, Contour};
use mellin_dglap::special_functions::MAX_SERIES_TERMS;

use crate::CliError;

/// Every numerical knob the front end exposes, in one place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericConfig {
    pub contour_anchor: f64,
    pub contour_extent: f64,
    pub contour_nodes: usize,
    pub cheb_nodes: usize,
    pub series_tol: f64,
    pub fd_step: f64,
    pub quad_tol: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        let direct = mellin_dglap::mellin_inversion::DirectConfig::default();
        Self {
            contour_anchor: direct.anchor,
            contour_extent: direct.half_extent,
            contour_nodes: direct.nodes,
            cheb_nodes: 64,
            series_tol: 1e-14,
            fd_step: 1e-3,
            quad_tol: 1e-12,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--{name} must be positive and finite, got {v}"
        )))
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.contour_anchor.is_finite() && self.contour_anchor > -1.0) {
            return Err(CliError::Usage(format!(
                "--contour-anchor must lie right of the pole at -1, got {}",
                self.contour_anchor
            )));
        }
        positive("contour-extent", self.contour_extent)?;
        positive("series-tol", self.series_tol)?;
        positive("fd-step", self.fd_step)?;
        positive("quad-tol", self.quad_tol)?;
        if self.contour_nodes < 3 {
            return Err(CliError::Usage("--contour-nodes must be at least 3".into()));
        }
        if self.cheb_nodes < 4 {
            return Err(CliError::Usage("--cheb-nodes must be at least 4".into()));
        }
        Ok(())
    }

    pub fn contour(&self) -> Result<Contour, CliError> {
        build_vertical_contour(self.contour_anchor, self.contour_extent, self.contour_nodes)
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn dual(&self) -> DualSeriesConfig {
        DualSeriesConfig {
            tol: self.series_tol,
            max_terms: MAX_SERIES_TERMS,
        }
    }
}
