//! Laplace transforms of the aggregate interference from one constellation
//! when every interferer lies beyond an exclusion distance `r0`.
//!
//! With unit-mean Gamma(m) fading and uniform interferer gain, the PPP
//! Laplace functional gives
//! `L(s; r0) = exp(-lambda int_{A_vis, |x-t| > r0} 1 - (1 + s / (m w r^alpha))^-m dx)`
//! with `w = 1 / (P_t G_bar (c / 4 pi f_c)^2)`.
//!
//! The GEO arc integral is taken over the orbit offset angle instead of the
//! distance, which turns `r dr / sqrt(v1 - (v2 - r^2)^2)` into `d(delta) / 2`
//! and removes the endpoint singularity.

use std::f64::consts::PI;

use crate::channel::omega_coefficient;
use crate::error::{Error, Result};
use crate::geometry::{geo_distance_bounds, geo_visible_half_angle, leo_distance_bounds, GeoArc};
use crate::quadrature::QuadratureSpec;
use crate::scenario::{SatKind, ScenarioConfig};

/// `1 - (m w r^alpha / (s + m w r^alpha))^m`: one minus the fading Laplace
/// transform at `s` times the mean interferer power at distance `r`.
#[inline]
pub(crate) fn interference_kernel(s: f64, r: f64, m: f64, omega: f64, alpha: f64) -> f64 {
    let x = s / (m * omega * r.powf(alpha));
    -(-m * x.ln_1p()).exp_m1()
}

fn check_s(s: f64) -> Result<()> {
    if !(s >= 0.0) || s.is_infinite() {
        return Err(Error::invalid("s", format!("Laplace argument must be finite and nonnegative, got {s}")));
    }
    Ok(())
}

/// `exp(-lambda |interference region| ...)` exponent for GEO interferers.
fn geo_exponent(s: f64, r0: f64, cfg: &ScenarioConfig, quad: &QuadratureSpec) -> Result<f64> {
    let Some(bounds) = geo_distance_bounds(&cfg.terminal, &cfg.geom) else {
        return Ok(0.0);
    };
    let density = cfg.geo.density;
    if s == 0.0 || density == 0.0 {
        return Ok(0.0);
    }
    let r0 = bounds.clamp(r0);
    if r0 >= bounds.r_vis_max_km {
        return Ok(0.0);
    }
    let link = &cfg.geo.link;
    let omega = omega_coefficient(link.tx_power_w, link.interferer_gain, &cfg.channel);
    let m = cfg.channel.nakagami_m as f64;
    let arc = GeoArc::new(&cfg.terminal, &cfg.geom);
    let lo = arc.offset_at(r0);
    let hi = geo_visible_half_angle(&cfg.terminal, &cfg.geom);
    let integral = quad.integrate_fallible(
        |delta| Ok(interference_kernel(s, arc.distance_at(delta), m, omega, link.pathloss_exp)),
        lo,
        hi,
        &[],
    )?;
    Ok(2.0 * density * arc.orbit_radius * integral.value)
}

fn leo_exponent(s: f64, r0: f64, cfg: &ScenarioConfig, quad: &QuadratureSpec) -> Result<f64> {
    let density = cfg.leo.density;
    if s == 0.0 || density == 0.0 {
        return Ok(0.0);
    }
    let bounds = leo_distance_bounds(&cfg.geom);
    let r0 = bounds.clamp(r0);
    if r0 >= bounds.r_vis_max_km {
        return Ok(0.0);
    }
    let link = &cfg.leo.link;
    let omega = omega_coefficient(link.tx_power_w, link.interferer_gain, &cfg.channel);
    let m = cfg.channel.nakagami_m as f64;
    let kappa = quad.integrate_fallible(
        |r| Ok(interference_kernel(s, r, m, omega, link.pathloss_exp) * r),
        r0,
        bounds.r_vis_max_km,
        &[],
    )?;
    let shell = cfg.geom.leo_shell_radius();
    Ok(2.0 * PI * density * shell / cfg.geom.earth_radius() * kappa.value)
}

pub(crate) fn laplace_with(kind: SatKind, s: f64, r0: f64, cfg: &ScenarioConfig, quad: &QuadratureSpec) -> Result<f64> {
    check_s(s)?;
    let exponent = match kind {
        SatKind::Geo => geo_exponent(s, r0, cfg, quad)?,
        SatKind::Leo => leo_exponent(s, r0, cfg, quad)?,
    };
    Ok((-exponent).exp())
}

/// `E[exp(-s I)]` for the GEO interference beyond `r0`. Equals 1 when the
/// arc is invisible or empty.
pub fn laplace_interference_geo(s: f64, r0: f64, cfg: &ScenarioConfig) -> Result<f64> {
    laplace_with(SatKind::Geo, s, r0, cfg, &cfg.quadrature)
}

pub fn laplace_interference_leo(s: f64, r0: f64, cfg: &ScenarioConfig) -> Result<f64> {
    laplace_with(SatKind::Leo, s, r0, cfg, &cfg.quadrature)
}

pub fn laplace_interference(kind: SatKind, s: f64, r0: f64, cfg: &ScenarioConfig) -> Result<f64> {
    laplace_with(kind, s, r0, cfg, &cfg.quadrature)
}
