//! Closed-form and quadrature evaluation of visibility, nearest-distance,
//! association, interference and coverage probabilities.

pub mod association;
pub mod coverage;
pub mod distance;
pub mod laplace;
pub mod visibility;

pub use association::{biased_distance, p_assc, p_assc_geo, p_assc_leo};
pub use coverage::{p_cov, p_cov_geo, p_cov_leo, p_cov_nocross_geo, p_cov_nocross_leo};
pub use distance::{cdf_r0_geo, cdf_r0_leo, pdf_r0_geo, pdf_r0_leo, NearestDistance};
pub use laplace::{laplace_interference, laplace_interference_geo, laplace_interference_leo};
pub use visibility::{mean_visible_count, p_vis, p_vis_geo, p_vis_leo};

use crate::error::Result;
use crate::geometry::geo_visible;
use crate::par::{par_map, Execution};
use crate::scenario::{SatKind, ScenarioConfig};

/// Every component probability at one SINR threshold.
///
/// Association and per-type coverage fields are conditioned on both types
/// being visible; when only one type can be visible its association
/// probability is 1 and the other type's fields are 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageBreakdown {
    /// Linear SINR threshold.
    pub tau: f64,
    pub p_vis_geo: f64,
    pub p_vis_leo: f64,
    pub p_assc_geo: f64,
    pub p_assc_leo: f64,
    pub p_cov_geo: f64,
    pub p_cov_leo: f64,
    pub p_cov_geo_nocross: f64,
    pub p_cov_leo_nocross: f64,
    pub p_cov_total: f64,
}

impl CoverageBreakdown {
    /// Probability that at least one satellite of either type is visible.
    pub fn p_any_visible(&self) -> f64 {
        1.0 - (1.0 - self.p_vis_geo) * (1.0 - self.p_vis_leo)
    }

    /// Total coverage renormalised to snapshots with something visible.
    pub fn p_cov_given_visible(&self) -> f64 {
        let any = self.p_any_visible();
        if any > 0.0 {
            (self.p_cov_total / any).min(1.0)
        } else {
            0.0
        }
    }

    /// Coverage of a network made of the GEO constellation alone.
    pub fn p_cov_geo_only_network(&self) -> f64 {
        self.p_vis_geo * self.p_cov_geo_nocross
    }

    pub fn p_cov_leo_only_network(&self) -> f64 {
        self.p_vis_leo * self.p_cov_leo_nocross
    }

    /// Recombine the components by visibility case.
    pub fn recombine(&self) -> f64 {
        let (g, l) = (self.p_vis_geo, self.p_vis_leo);
        g * l * (self.p_assc_geo * self.p_cov_geo + self.p_assc_leo * self.p_cov_leo)
            + g * (1.0 - l) * self.p_cov_geo_nocross
            + (1.0 - g) * l * self.p_cov_leo_nocross
    }
}

/// Threshold-independent part of the breakdown.
#[derive(Debug, Clone, Copy)]
struct Association {
    p_vis_geo: f64,
    p_vis_leo: f64,
    p_assc_geo: f64,
    p_assc_leo: f64,
    geo: bool,
    leo: bool,
}

fn association(cfg: &ScenarioConfig) -> Result<Association> {
    let geo = cfg.geo.density > 0.0 && geo_visible(&cfg.terminal, &cfg.geom);
    let leo = cfg.leo.density > 0.0;
    let (p_assc_geo, p_assc_leo) = match (geo, leo) {
        (true, true) => (p_assc_geo(cfg)?, p_assc_leo(cfg)?),
        (true, false) => (1.0, 0.0),
        (false, true) => (0.0, 1.0),
        (false, false) => (0.0, 0.0),
    };
    Ok(Association {
        p_vis_geo: if geo { p_vis_geo(cfg) } else { 0.0 },
        p_vis_leo: if leo { p_vis_leo(cfg) } else { 0.0 },
        p_assc_geo,
        p_assc_leo,
        geo,
        leo,
    })
}

fn breakdown_at(tau: f64, a: &Association, cfg: &ScenarioConfig) -> Result<CoverageBreakdown> {
    let cov = |kind: SatKind, available: bool, cross: bool| -> Result<f64> {
        if available {
            p_cov(kind, tau, cfg, cross)
        } else {
            Ok(0.0)
        }
    };
    let both = a.geo && a.leo;
    let mut b = CoverageBreakdown {
        tau,
        p_vis_geo: a.p_vis_geo,
        p_vis_leo: a.p_vis_leo,
        p_assc_geo: a.p_assc_geo,
        p_assc_leo: a.p_assc_leo,
        p_cov_geo: cov(SatKind::Geo, both, true)?,
        p_cov_leo: cov(SatKind::Leo, both, true)?,
        p_cov_geo_nocross: cov(SatKind::Geo, a.geo, false)?,
        p_cov_leo_nocross: cov(SatKind::Leo, a.leo, false)?,
        p_cov_total: 0.0,
    };
    b.p_cov_total = b.recombine().clamp(0.0, 1.0);
    Ok(b)
}

/// All component probabilities and the total coverage at linear threshold
/// `tau`.
pub fn p_cov_total(tau: f64, cfg: &ScenarioConfig) -> Result<CoverageBreakdown> {
    cfg.validate()?;
    breakdown_at(tau, &association(cfg)?, cfg)
}

/// Breakdowns over a grid of linear thresholds, sharing the
/// threshold-independent work. Grid points are evaluated concurrently under
/// [`Execution::Parallel`].
pub fn coverage_curve(taus: &[f64], cfg: &ScenarioConfig, exec: Execution) -> Result<Vec<CoverageBreakdown>> {
    cfg.validate()?;
    let a = association(cfg)?;
    par_map(taus, exec, |tau| breakdown_at(*tau, &a, cfg))
        .into_iter()
        .collect()
}
