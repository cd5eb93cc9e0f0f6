//! Coverage probability of the typical terminal, per serving type and in
//! total.
//!
//! Conditioned on the serving distance `r`, the gamma-CDF approximation
//! `P[h >= x] ~ sum_i C(m,i) (-1)^(i+1) exp(-i nu x)` turns the coverage
//! event into a sum of products of Laplace transforms evaluated at
//! `i delta(r)`, `delta(r) = nu tau w_0 r^alpha`. The own-type interferers lie
//! beyond `r`, the other type beyond the biased distance.
//!
//! Under [`CoverageModel::AssociationConditioned`] the cross-type factor
//! becomes `(V(d) L(s; d) - V_vis) / P_vis`, where `V` is the other type's
//! void probability. That is the joint probability of the association event
//! and the interference functional given the other type is visible, and the
//! result is renormalised by the association probability.

use crate::analytic::association::{biased_distance, can_be_visible, cross_type_breaks, p_assc};
use crate::analytic::distance::NearestDistance;
use crate::analytic::laplace::laplace_with;
use crate::channel::{alternating_binomials, alzer_nu, omega_coefficient};
use crate::error::{Error, Result};
use crate::scenario::{CoverageModel, SatKind, ScenarioConfig};

/// Coverage probability when served by the nearest satellite of `kind`.
/// With `cross = false` the other constellation's interference is dropped.
pub fn p_cov(kind: SatKind, tau: f64, cfg: &ScenarioConfig, cross: bool) -> Result<f64> {
    if !(tau >= 0.0) || tau.is_infinite() {
        return Err(Error::invalid("tau", format!("SINR threshold must be finite and nonnegative, got {tau}")));
    }
    let serving = NearestDistance::new(kind, cfg)?;
    let other_kind = kind.other();
    let cross = cross && can_be_visible(other_kind, cfg);
    let other = if cross { Some(NearestDistance::new(other_kind, cfg)?) } else { None };
    let breaks = other.as_ref().map(|o| cross_type_breaks(kind, o, cfg)).unwrap_or_default();
    let joint = cross && cfg.coverage_model == CoverageModel::AssociationConditioned;

    let m = cfg.channel.nakagami_m;
    let coeffs = alternating_binomials(m);
    let nu = alzer_nu(m);
    let link = &cfg.constellation(kind).link;
    let omega0 = omega_coefficient(link.tx_power_w, link.mainlobe_gain, &cfg.channel);
    let noise = cfg.channel.noise_power_w();
    let inner = cfg.quadrature.tightened(10.0);

    let conditional = |r: f64| -> Result<f64> {
        let delta = nu * tau * omega0 * r.powf(link.pathloss_exp);
        let cross_r0 = biased_distance(r, other_kind, cfg);
        let mut acc = 0.0;
        for (k, c) in coeffs.iter().enumerate() {
            let s = (k + 1) as f64 * delta;
            let mut term = (-s * noise).exp();
            if term == 0.0 {
                continue;
            }
            term *= laplace_with(kind, s, r, cfg, &inner)?;
            if let Some(other) = &other {
                let l = laplace_with(other_kind, s, cross_r0, cfg, &inner)?;
                term *= if joint {
                    let p = other.visible_probability();
                    ((other.void_probability(cross_r0) * l - (1.0 - p)) / p).max(0.0)
                } else {
                    l
                };
            }
            acc += c * term;
        }
        Ok(acc)
    };
    let mut value = serving.expect(conditional, &cfg.quadrature, &breaks)?;
    if joint {
        let assc = p_assc(kind, cfg)?;
        value = if assc > 0.0 { value / assc } else { 0.0 };
    }
    Ok(value.clamp(0.0, 1.0))
}

pub fn p_cov_geo(tau: f64, cfg: &ScenarioConfig) -> Result<f64> {
    p_cov(SatKind::Geo, tau, cfg, true)
}

pub fn p_cov_leo(tau: f64, cfg: &ScenarioConfig) -> Result<f64> {
    p_cov(SatKind::Leo, tau, cfg, true)
}

pub fn p_cov_nocross_geo(tau: f64, cfg: &ScenarioConfig) -> Result<f64> {
    p_cov(SatKind::Geo, tau, cfg, false)
}

pub fn p_cov_nocross_leo(tau: f64, cfg: &ScenarioConfig) -> Result<f64> {
    p_cov(SatKind::Leo, tau, cfg, false)
}
