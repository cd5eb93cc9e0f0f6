//! Law of the distance to the nearest visible satellite of each type,
//! conditioned on at least one being visible.
//!
//! By the PPP void probability, `P[R_0 > r] = exp(-lambda |A(r)|)` where
//! `|A(r)|` is the measure of the visible region within distance `r`; the
//! conditioned CDF is `(1 - exp(-lambda |A(r)|)) / (1 - exp(-lambda |A_vis|))`.
//!
//! Expectations against these laws are computed after the substitution
//! `u = F(r)`, which turns `E[g(R_0)]` into `int_0^1 g(F^-1(u)) du`. This
//! removes the inverse-square-root endpoint singularity of the GEO density
//! and the sharp concentration of dense constellations near `r_min`.

use crate::error::{Error, Result};
use crate::geometry::{
    geo_arc_measure_derivative, geo_distance_bounds, geo_visible_half_angle, inv_latitude,
    leo_cap_measure_derivative, leo_distance_bounds, DistanceBounds, GeoArc, OrbitGeometry,
    TerminalLocation,
};
use crate::quadrature::QuadratureSpec;
use crate::scenario::{SatKind, ScenarioConfig};

#[derive(Debug, Clone, Copy)]
enum Law {
    /// Void exponent is `rate * delta(r)` with `delta` the orbit offset.
    Geo { arc: GeoArc, rate: f64 },
    /// Void exponent is `rate * (r^2 - a_L^2)`.
    Leo { rate: f64, altitude: f64 },
}

#[derive(Debug, Clone, Copy)]
pub struct NearestDistance {
    kind: SatKind,
    bounds: DistanceBounds,
    law: Law,
    /// `1 - exp(-lambda |A_vis|)`, the visibility probability.
    norm: f64,
    density: f64,
    geom: OrbitGeometry,
    terminal: TerminalLocation,
}

pub(crate) fn geo_invisible_error(cfg: &ScenarioConfig) -> Error {
    Error::GeoInvisible {
        latitude_deg: cfg.terminal.latitude().to_degrees(),
        limit_deg: inv_latitude(&cfg.geom).to_degrees(),
    }
}

impl NearestDistance {
    pub fn new(kind: SatKind, cfg: &ScenarioConfig) -> Result<Self> {
        let density = cfg.constellation(kind).density;
        if !(density > 0.0) {
            return Err(Error::EmptyConstellation(kind));
        }
        let geom = &cfg.geom;
        match kind {
            SatKind::Geo => {
                let bounds = geo_distance_bounds(&cfg.terminal, geom).ok_or_else(|| geo_invisible_error(cfg))?;
                let arc = GeoArc::new(&cfg.terminal, geom);
                let rate = 2.0 * density * geom.geo_orbit_radius();
                let beta = geo_visible_half_angle(&cfg.terminal, geom);
                Ok(Self {
                    kind,
                    bounds,
                    law: Law::Geo { arc, rate },
                    norm: -(-rate * beta).exp_m1(),
                    density,
                    geom: *geom,
                    terminal: cfg.terminal,
                })
            }
            SatKind::Leo => {
                let bounds = leo_distance_bounds(geom);
                let altitude = geom.leo_altitude();
                let rate = std::f64::consts::PI * density * geom.leo_shell_radius() / geom.earth_radius();
                let span = bounds.r_vis_max_km.powi(2) - altitude * altitude;
                Ok(Self {
                    kind,
                    bounds,
                    law: Law::Leo { rate, altitude },
                    norm: -(-rate * span).exp_m1(),
                    density,
                    geom: *geom,
                    terminal: cfg.terminal,
                })
            }
        }
    }

    pub fn kind(&self) -> SatKind {
        self.kind
    }

    pub fn bounds(&self) -> DistanceBounds {
        self.bounds
    }

    /// `lambda |A(r)|` for `r` clamped into the support.
    fn void_exponent(&self, r: f64) -> f64 {
        let r = self.bounds.clamp(r);
        match self.law {
            Law::Geo { arc, rate } => rate * arc.offset_at(r),
            Law::Leo { rate, altitude } => rate * (r * r - altitude * altitude).max(0.0),
        }
    }

    fn check(&self, r: f64) -> Result<()> {
        if self.bounds.contains(r) {
            Ok(())
        } else {
            Err(Error::OutsideSupport {
                r_km: r,
                lo_km: self.bounds.r_min_km,
                hi_km: self.bounds.r_vis_max_km,
            })
        }
    }

    /// Probability that no satellite of this type, visible or not, lies
    /// within distance `r`: `exp(-lambda |A(r)|)` with `r` clamped into the
    /// support.
    pub(crate) fn void_probability(&self, r: f64) -> f64 {
        (-self.void_exponent(r)).exp()
    }

    /// Probability that at least one satellite of this type is visible.
    pub(crate) fn visible_probability(&self) -> f64 {
        self.norm
    }

    pub fn cdf(&self, r: f64) -> Result<f64> {
        self.check(r)?;
        Ok(self.cdf_extended(r))
    }

    /// CDF extended by 0 below and 1 above the support.
    pub fn cdf_extended(&self, r: f64) -> f64 {
        if r <= self.bounds.r_min_km {
            return 0.0;
        }
        if r >= self.bounds.r_vis_max_km {
            return 1.0;
        }
        (-(-self.void_exponent(r)).exp_m1() / self.norm).clamp(0.0, 1.0)
    }

    /// Analytic derivative of the CDF. The GEO density is infinite at
    /// `r_min`.
    pub fn pdf(&self, r: f64) -> Result<f64> {
        self.check(r)?;
        let survival = (-self.void_exponent(r)).exp();
        let measure_rate = match self.law {
            Law::Geo { .. } => {
                if r == self.bounds.r_min_km {
                    return Ok(f64::INFINITY);
                }
                geo_arc_measure_derivative(r, &self.terminal, &self.geom)?
            }
            Law::Leo { .. } => leo_cap_measure_derivative(r, &self.geom),
        };
        Ok(self.density * measure_rate * survival / self.norm)
    }

    /// Inverse CDF on `[0, 1]`.
    pub fn quantile(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        let t = -(-u * self.norm).ln_1p();
        if !t.is_finite() {
            // norm rounds to one for dense constellations
            return self.bounds.r_vis_max_km;
        }
        let r = match self.law {
            Law::Geo { arc, rate } => arc.distance_at(t / rate),
            Law::Leo { rate, altitude } => (altitude * altitude + t / rate).sqrt(),
        };
        self.bounds.clamp(r)
    }

    /// `E[g(R_0)]` by quadrature in the probability variable. `r_breaks` are
    /// distances where `g` has kinks.
    pub fn expect<F>(&self, mut g: F, quad: &QuadratureSpec, r_breaks: &[f64]) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let u_breaks: Vec<f64> = r_breaks
            .iter()
            .filter(|r| self.bounds.r_min_km < **r && **r < self.bounds.r_vis_max_km)
            .map(|r| self.cdf_extended(*r))
            .collect();
        Ok(quad
            .integrate_fallible(|u| g(self.quantile(u)), 0.0, 1.0, &u_breaks)?
            .value)
    }
}

pub fn cdf_r0_geo(r: f64, cfg: &ScenarioConfig) -> Result<f64> {
    NearestDistance::new(SatKind::Geo, cfg)?.cdf(r)
}

pub fn pdf_r0_geo(r: f64, cfg: &ScenarioConfig) -> Result<f64> {
    NearestDistance::new(SatKind::Geo, cfg)?.pdf(r)
}

pub fn cdf_r0_leo(r: f64, cfg: &ScenarioConfig) -> Result<f64> {
    NearestDistance::new(SatKind::Leo, cfg)?.cdf(r)
}

pub fn pdf_r0_leo(r: f64, cfg: &ScenarioConfig) -> Result<f64> {
    NearestDistance::new(SatKind::Leo, cfg)?.pdf(r)
}
