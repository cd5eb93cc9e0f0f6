//! One network snapshot: association and SINR.

use rand::Rng;

use super::sampling::{sample_geo_visible, sample_leo_visible, SatellitePoint};
use crate::channel::sample_channel_gain;
use crate::scenario::{SatKind, ScenarioConfig};

/// Received power before fading, `P_t G l(d)`.
fn received(cfg: &ScenarioConfig, kind: SatKind, gain: f64, d: f64) -> f64 {
    let c = cfg.constellation(kind);
    c.link.tx_power_w * gain * cfg.channel.wavelength_factor() * d.powf(-c.link.pathloss_exp)
}

/// Biased received power maximisation over the nearest satellite of each
/// type. Ties go to GEO.
pub fn associate(geo: &[SatellitePoint], leo: &[SatellitePoint], cfg: &ScenarioConfig) -> Option<SatKind> {
    let score = |kind: SatKind, p: Option<&SatellitePoint>| {
        p.map(|p| {
            let link = &cfg.constellation(kind).link;
            received(cfg, kind, link.mainlobe_gain * link.bias, p.distance_km)
        })
    };
    match (score(SatKind::Geo, geo.first()), score(SatKind::Leo, leo.first())) {
        (None, None) => None,
        (Some(_), None) => Some(SatKind::Geo),
        (None, Some(_)) => Some(SatKind::Leo),
        (Some(g), Some(l)) => Some(if g >= l { SatKind::Geo } else { SatKind::Leo }),
    }
}

/// Faded received powers of one type, nearest first, split into the
/// mainlobe power of the nearest satellite and the total interferer-gain
/// power of the rest (`rest`) and of all of them (`all`).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TypePowers {
    pub nearest_mainlobe: Option<f64>,
    pub rest: f64,
    pub all: f64,
}

impl TypePowers {
    pub fn from_points(kind: SatKind, points: &[SatellitePoint], fading: &[f64], cfg: &ScenarioConfig) -> Self {
        assert_eq!(points.len(), fading.len());
        let link = &cfg.constellation(kind).link;
        let mut out = TypePowers::default();
        for (i, (p, h)) in points.iter().zip(fading).enumerate() {
            let base = received(cfg, kind, 1.0, p.distance_km) * h;
            let interf = base * link.interferer_gain;
            out.all += interf;
            if i == 0 {
                out.nearest_mainlobe = Some(base * link.mainlobe_gain);
            } else {
                out.rest += interf;
            }
        }
        out
    }
}

/// SINR when `serving`'s nearest satellite serves. The serving type
/// contributes its remaining satellites as interference; the other type
/// contributes all of its satellites when `cross` is set. Returns `None`
/// when the serving type has no visible satellite.
pub fn sinr_from_powers(
    serving: SatKind,
    geo: &TypePowers,
    leo: &TypePowers,
    noise_w: f64,
    cross: bool,
) -> Option<f64> {
    let (own, other) = match serving {
        SatKind::Geo => (geo, leo),
        SatKind::Leo => (leo, geo),
    };
    let signal = own.nearest_mainlobe?;
    let interference = own.rest + if cross { other.all } else { 0.0 };
    Some(signal / (interference + noise_w))
}

/// Outcome of one snapshot: the hybrid SINR plus the SINR each single-type
/// network would see on its own.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnapshotOutcome {
    pub geo_visible: bool,
    pub leo_visible: bool,
    pub serving: Option<SatKind>,
    pub sinr: Option<f64>,
    pub geo_only_sinr: Option<f64>,
    pub leo_only_sinr: Option<f64>,
}

/// Full snapshot with the sampled satellites and fading retained.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub geo: Vec<SatellitePoint>,
    pub leo: Vec<SatellitePoint>,
    pub geo_fading: Vec<f64>,
    pub leo_fading: Vec<f64>,
    pub outcome: SnapshotOutcome,
}

pub fn evaluate(
    geo: &[SatellitePoint],
    leo: &[SatellitePoint],
    geo_fading: &[f64],
    leo_fading: &[f64],
    cfg: &ScenarioConfig,
    noise_w: f64,
) -> SnapshotOutcome {
    let gp = TypePowers::from_points(SatKind::Geo, geo, geo_fading, cfg);
    let lp = TypePowers::from_points(SatKind::Leo, leo, leo_fading, cfg);
    let serving = associate(geo, leo, cfg);
    SnapshotOutcome {
        geo_visible: !geo.is_empty(),
        leo_visible: !leo.is_empty(),
        serving,
        sinr: serving.and_then(|k| sinr_from_powers(k, &gp, &lp, noise_w, true)),
        geo_only_sinr: sinr_from_powers(SatKind::Geo, &gp, &lp, noise_w, false),
        leo_only_sinr: sinr_from_powers(SatKind::Leo, &gp, &lp, noise_w, false),
    }
}

pub fn snapshot<R: Rng + ?Sized>(cfg: &ScenarioConfig, rng: &mut R) -> Snapshot {
    let m = cfg.channel.nakagami_m;
    let geo = sample_geo_visible(cfg, rng);
    let leo = sample_leo_visible(cfg, rng);
    let geo_fading: Vec<f64> = geo.iter().map(|_| sample_channel_gain(m, rng)).collect();
    let leo_fading: Vec<f64> = leo.iter().map(|_| sample_channel_gain(m, rng)).collect();
    let outcome = evaluate(&geo, &leo, &geo_fading, &leo_fading, cfg, cfg.channel.noise_power_w());
    Snapshot {
        geo,
        leo,
        geo_fading,
        leo_fading,
        outcome,
    }
}

pub fn snapshot_sinr<R: Rng + ?Sized>(cfg: &ScenarioConfig, rng: &mut R) -> SnapshotOutcome {
    snapshot(cfg, rng).outcome
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::sampling::trial_rng;
    use approx::assert_relative_eq;

    fn point(kind: SatKind, d: f64) -> SatellitePoint {
        SatellitePoint {
            kind,
            position: [0.0; 3],
            distance_km: d,
        }
    }

    fn symmetric_cfg() -> ScenarioConfig {
        let mut cfg = ScenarioConfig::default();
        cfg.leo.link = cfg.geo.link;
        cfg
    }

    #[test]
    fn symmetric_equal_distance_gives_unit_sinr_without_noise() {
        let cfg = symmetric_cfg();
        let geo = [point(SatKind::Geo, 1000.0)];
        let leo = [point(SatKind::Leo, 1000.0)];
        let mut cfg2 = cfg;
        cfg2.geo.link.interferer_gain = cfg.geo.link.mainlobe_gain;
        cfg2.leo.link.interferer_gain = cfg.leo.link.mainlobe_gain;
        let out = evaluate(&geo, &leo, &[1.0], &[1.0], &cfg2, 0.0);
        assert_eq!(out.serving, Some(SatKind::Geo));
        assert_relative_eq!(out.sinr.unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn lone_satellite_is_snr() {
        let cfg = ScenarioConfig::default();
        let geo = [point(SatKind::Geo, 36_000.0)];
        let out = evaluate(&geo, &[], &[1.0], &[], &cfg, cfg.channel.noise_power_w());
        let s = cfg.geo.link.serving_power() * cfg.channel.wavelength_factor() * 36_000f64.powf(-2.7);
        assert_relative_eq!(out.sinr.unwrap(), s / cfg.channel.noise_power_w(), max_relative = 1e-12);
        assert_eq!(out.serving, Some(SatKind::Geo));
        assert!(out.leo_only_sinr.is_none());
        assert_eq!(out.geo_only_sinr, out.sinr);
    }

    #[test]
    fn association_follows_biased_power() {
        let mut cfg = symmetric_cfg();
        let geo = [point(SatKind::Geo, 2000.0)];
        let leo = [point(SatKind::Leo, 1000.0)];
        assert_eq!(associate(&geo, &leo, &cfg), Some(SatKind::Leo));
        cfg.geo.link.bias = 1e6;
        assert_eq!(associate(&geo, &leo, &cfg), Some(SatKind::Geo));
        assert_eq!(associate(&[], &[], &cfg), None);
    }

    #[test]
    fn interference_composition() {
        let cfg = ScenarioConfig::default();
        let geo = [point(SatKind::Geo, 36_000.0), point(SatKind::Geo, 37_000.0)];
        let leo = [point(SatKind::Leo, 700.0), point(SatKind::Leo, 900.0)];
        let gp = TypePowers::from_points(SatKind::Geo, &geo, &[0.5, 2.0], &cfg);
        let lp = TypePowers::from_points(SatKind::Leo, &leo, &[1.5, 0.25], &cfg);
        assert_relative_eq!(gp.all, gp.rest + gp.nearest_mainlobe.unwrap() * cfg.geo.link.interferer_gain / cfg.geo.link.mainlobe_gain, max_relative = 1e-12);
        let n = 1e-13;
        let cross = sinr_from_powers(SatKind::Leo, &gp, &lp, n, true).unwrap();
        let solo = sinr_from_powers(SatKind::Leo, &gp, &lp, n, false).unwrap();
        assert!(cross < solo);
        assert_relative_eq!(lp.nearest_mainlobe.unwrap() / cross - lp.nearest_mainlobe.unwrap() / solo, gp.all, max_relative = 1e-9);
    }

    #[test]
    fn sampled_snapshot_is_consistent() {
        let cfg = ScenarioConfig::default();
        for i in 0..50 {
            let snap = snapshot(&cfg, &mut trial_rng(11, i));
            assert_eq!(snap.geo.len(), snap.geo_fading.len());
            let o = snap.outcome;
            assert_eq!(o.serving.is_some(), o.geo_visible || o.leo_visible);
            if let (Some(s), Some(k)) = (o.sinr, o.serving) {
                let solo = match k {
                    SatKind::Geo => o.geo_only_sinr.unwrap(),
                    SatKind::Leo => o.leo_only_sinr.unwrap(),
                };
                assert!(s <= solo && s > 0.0);
            }
        }
    }
}
