//! Biased-received-power association between the nearest GEO and the
//! nearest LEO satellite, given that both types are visible.

use crate::analytic::distance::NearestDistance;
use crate::error::Result;
use crate::geometry::geo_visible;
use crate::scenario::{SatKind, ScenarioConfig};

/// Whether a satellite of `kind` can ever be visible from the terminal.
pub(crate) fn can_be_visible(kind: SatKind, cfg: &ScenarioConfig) -> bool {
    cfg.constellation(kind).density > 0.0 && (kind == SatKind::Leo || geo_visible(&cfg.terminal, &cfg.geom))
}

/// Distance at which a satellite of type `toward` delivers the same biased
/// received power as a satellite of the other type at distance `r`:
/// `(P_t G_0 B ratio)^(1/alpha_toward) r^(alpha_other / alpha_toward)`.
pub fn biased_distance(r: f64, toward: SatKind, cfg: &ScenarioConfig) -> f64 {
    let a_to = cfg.constellation(toward).link.pathloss_exp;
    let a_from = cfg.constellation(toward.other()).link.pathloss_exp;
    cfg.biased_power_ratio(toward).powf(1.0 / a_to) * r.powf(a_from / a_to)
}

/// Distances of the serving type at which the biased distance toward the
/// other type crosses that type's support bounds and a few of its
/// quantiles. The integrands of the association and coverage integrals have
/// kinks at the bounds and can rise steeply in between when the other
/// type's nearest distance is concentrated.
pub(crate) fn cross_type_breaks(serving: SatKind, other: &NearestDistance, cfg: &ScenarioConfig) -> Vec<f64> {
    let b = other.bounds();
    let inner = [1e-6, 1e-3, 0.05, 0.5, 0.95, 0.999, 1.0 - 1e-6].map(|u| other.quantile(u));
    [b.r_min_km, b.r_vis_max_km]
        .into_iter()
        .chain(inner)
        .map(|r| biased_distance(r, serving, cfg))
        .collect()
}

/// `P[type kind wins the biased comparison | both types visible]`. When
/// only one type can be visible it wins with probability 1; when neither
/// can, both probabilities are 0.
pub fn p_assc(kind: SatKind, cfg: &ScenarioConfig) -> Result<f64> {
    match (can_be_visible(kind, cfg), can_be_visible(kind.other(), cfg)) {
        (true, true) => {}
        (own, _) => return Ok(if own { 1.0 } else { 0.0 }),
    }
    let own = NearestDistance::new(kind, cfg)?;
    let other = NearestDistance::new(kind.other(), cfg)?;
    let breaks = cross_type_breaks(kind, &other, cfg);
    let lost = own.expect(
        |r| Ok(other.cdf_extended(biased_distance(r, kind.other(), cfg))),
        &cfg.quadrature,
        &breaks,
    )?;
    Ok((1.0 - lost).clamp(0.0, 1.0))
}

pub fn p_assc_geo(cfg: &ScenarioConfig) -> Result<f64> {
    p_assc(SatKind::Geo, cfg)
}

pub fn p_assc_leo(cfg: &ScenarioConfig) -> Result<f64> {
    p_assc(SatKind::Leo, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::db_to_linear;
    use crate::geometry::TerminalLocation;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Association scenario: alpha = {3.6, 4}, 50 dB GEO/LEO
    /// mainlobe power ratio, m = 3.
    fn fig_cfg() -> ScenarioConfig {
        let mut cfg = ScenarioConfig::default();
        cfg.geo.link.pathloss_exp = 3.6;
        cfg.leo.link.pathloss_exp = 4.0;
        cfg.leo.link.tx_power_w = cfg.geo.link.tx_power_w / db_to_linear(50.0);
        cfg.channel.nakagami_m = 3;
        cfg
    }

    #[test]
    fn symmetric_network_is_identity() {
        let mut cfg = ScenarioConfig::default();
        cfg.leo.link = cfg.geo.link;
        for r in [600.0, 1000.0, 36_000.0] {
            assert_relative_eq!(biased_distance(r, SatKind::Geo, &cfg), r, max_relative = 1e-14);
            assert_relative_eq!(biased_distance(r, SatKind::Leo, &cfg), r, max_relative = 1e-14);
        }
    }

    #[test]
    fn biased_distance_value() {
        let mut cfg = fig_cfg();
        cfg.geo.link.pathloss_exp = 4.0;
        assert_relative_eq!(biased_distance(600.0, SatKind::Geo, &cfg), 10_669.676_460_233_537, max_relative = 1e-12);
    }

    #[test]
    fn biased_distance_round_trip() {
        let cfg = fig_cfg();
        for r in [650.0, 2000.0] {
            let d = biased_distance(biased_distance(r, SatKind::Geo, &cfg), SatKind::Leo, &cfg);
            assert_relative_eq!(d, r, max_relative = 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn biased_power_identity(
            pg in 1.0f64..1e6, pl in 1.0f64..1e6, bg in 0.01f64..100.0, bl in 0.01f64..100.0,
            ag in 2.0f64..5.0, al in 2.0f64..5.0, r in 100.0f64..50_000.0,
        ) {
            let mut cfg = ScenarioConfig::default();
            cfg.geo.link.tx_power_w = pg;
            cfg.leo.link.tx_power_w = pl;
            cfg.geo.link.bias = bg;
            cfg.leo.link.bias = bl;
            cfg.geo.link.pathloss_exp = ag;
            cfg.leo.link.pathloss_exp = al;
            for toward in SatKind::ALL {
                let from = toward.other();
                let d = biased_distance(r, toward, &cfg);
                let lhs = cfg.constellation(from).link.biased_power() * r.powf(-cfg.constellation(from).link.pathloss_exp);
                let rhs = cfg.constellation(toward).link.biased_power() * d.powf(-cfg.constellation(toward).link.pathloss_exp);
                prop_assert!(((lhs - rhs) / lhs).abs() < 1e-12);
            }
        }

        #[test]
        fn association_complementary(
            lat in -80.0f64..80.0, n_geo in 1.0f64..2000.0, n_leo in 1.0f64..2000.0,
            ratio_db in 0.0f64..80.0, bias_db in -30.0f64..30.0, ag in 2.0f64..4.5, al in 2.0f64..4.5,
        ) {
            let mut cfg = ScenarioConfig::default();
            cfg.terminal = TerminalLocation::from_degrees(lat, 0.0).unwrap();
            cfg.geo.density = crate::scenario::geo_density_from_count(n_geo, &cfg.geom);
            cfg.leo.density = crate::scenario::leo_density_from_count(n_leo, &cfg.geom);
            cfg.leo.link.tx_power_w = cfg.geo.link.tx_power_w / db_to_linear(ratio_db);
            cfg.geo.link.bias = db_to_linear(bias_db);
            cfg.geo.link.pathloss_exp = ag;
            cfg.leo.link.pathloss_exp = al;
            let g = p_assc_geo(&cfg).unwrap();
            let l = p_assc_leo(&cfg).unwrap();
            prop_assert!((0.0..=1.0).contains(&g) && (0.0..=1.0).contains(&l));
            prop_assert!((g + l - 1.0).abs() <= 1e-6, "g={} l={}", g, l);
        }
    }

    #[test]
    fn huge_bias_favours_geo() {
        let mut cfg = fig_cfg();
        cfg.geo.link.bias = db_to_linear(200.0);
        assert!(p_assc_geo(&cfg).unwrap() > 1.0 - 1e-9);
        cfg.geo.link.bias = db_to_linear(-200.0);
        assert!(p_assc_geo(&cfg).unwrap() < 1e-9);
    }

    #[test]
    fn bias_monotone() {
        let mut cfg = fig_cfg();
        let mut last = 0.0;
        for db in (-40..=40).step_by(5) {
            cfg.geo.link.bias = db_to_linear(db as f64);
            let p = p_assc_geo(&cfg).unwrap();
            assert!(p >= last - 1e-9, "bias {db} dB: {p} < {last}");
            last = p;
        }
    }

    #[test]
    fn single_visible_type_always_wins() {
        let mut cfg = fig_cfg();
        cfg.terminal = TerminalLocation::from_degrees(82.0, 0.0).unwrap();
        assert_eq!((p_assc_geo(&cfg).unwrap(), p_assc_leo(&cfg).unwrap()), (0.0, 1.0));
        let mut cfg = fig_cfg();
        cfg.leo.density = 0.0;
        assert_eq!((p_assc_geo(&cfg).unwrap(), p_assc_leo(&cfg).unwrap()), (1.0, 0.0));
    }
}
