//! Monte Carlo simulation of the hybrid network.
//!
//! Every function here is driven by a `(seed, index)` pair per draw and
//! aggregates in index order, so outputs are bit-identical across
//! [`Execution`] strategies and thread counts.

pub mod estimate;
pub mod sampling;
pub mod snapshot;

pub use estimate::{estimate, estimate_with, CoveragePoint, CoverageReport, EstimateWithCI};
pub use sampling::{sample_geo_visible, sample_leo_visible, sample_visible, trial_rng, SatellitePoint};
pub use snapshot::{associate, evaluate, snapshot, snapshot_sinr, Snapshot, SnapshotOutcome, TypePowers};

use crate::analytic::visibility::p_vis;
use crate::channel::sample_channel_gain;
use crate::error::{Error, Result};
use crate::par::{map_chunks, Execution};
use crate::scenario::{SatKind, ScenarioConfig};

use estimate::CHUNK;

/// Attempts allowed per conditioned draw before giving up.
const MAX_REJECTIONS: u32 = 1_000_000;

fn require_visible(kind: SatKind, cfg: &ScenarioConfig) -> Result<()> {
    if p_vis(kind, cfg) > 0.0 {
        return Ok(());
    }
    Err(match kind {
        SatKind::Geo if cfg.geo.density > 0.0 => crate::analytic::distance::geo_invisible_error(cfg),
        _ => Error::EmptyConstellation(kind),
    })
}

/// Number of visible satellites of `kind` in each of `n` snapshots.
pub fn visible_counts(kind: SatKind, cfg: &ScenarioConfig, n: u64, seed: u64, exec: Execution) -> Vec<usize> {
    map_chunks(n, CHUNK, exec, |range| {
        range
            .map(|i| sample_visible(kind, cfg, &mut trial_rng(seed, i)).len())
            .collect::<Vec<_>>()
    })
    .concat()
}

/// `n` draws of the nearest visible distance of `kind`, each conditioned on
/// at least one satellite of that type being visible.
pub fn nearest_distances(kind: SatKind, cfg: &ScenarioConfig, n: u64, seed: u64, exec: Execution) -> Result<Vec<f64>> {
    require_visible(kind, cfg)?;
    let parts = map_chunks(n, CHUNK, exec, |range| {
        range
            .map(|i| {
                let mut rng = trial_rng(seed, i);
                for _ in 0..MAX_REJECTIONS {
                    if let Some(p) = sample_visible(kind, cfg, &mut rng).first() {
                        return Ok(p.distance_km);
                    }
                }
                Err(Error::EmptyConstellation(kind))
            })
            .collect::<Result<Vec<_>>>()
    });
    Ok(parts.into_iter().collect::<Result<Vec<_>>>()?.concat())
}

/// Fraction of `n` snapshots, each conditioned on both types being visible,
/// in which the terminal associates with GEO.
pub fn association_frequency(cfg: &ScenarioConfig, n: u64, seed: u64, exec: Execution) -> Result<EstimateWithCI> {
    require_visible(SatKind::Geo, cfg)?;
    require_visible(SatKind::Leo, cfg)?;
    let parts = map_chunks(n, CHUNK, exec, |range| {
        let mut hits = 0u64;
        for i in range {
            let mut rng = trial_rng(seed, i);
            let mut found = false;
            for _ in 0..MAX_REJECTIONS {
                let geo = sample_visible(SatKind::Geo, cfg, &mut rng);
                let leo = sample_visible(SatKind::Leo, cfg, &mut rng);
                if !geo.is_empty() && !leo.is_empty() {
                    hits += (associate(&geo, &leo, cfg) == Some(SatKind::Geo)) as u64;
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::EmptyConstellation(SatKind::Leo));
            }
        }
        Ok(hits)
    });
    let hits = parts.into_iter().sum::<Result<u64>>()?;
    Ok(EstimateWithCI::from_counts(hits, n))
}

/// Empirical Laplace transform `E[exp(-s I)]` of the interference from
/// satellites of `kind` farther than `r0`, received with the interferer
/// gain, at each `s` in `s_grid`.
pub fn laplace_functional_estimate(
    kind: SatKind,
    s_grid: &[f64],
    r0: f64,
    cfg: &ScenarioConfig,
    n: u64,
    seed: u64,
    exec: Execution,
) -> Vec<EstimateWithCI> {
    let c = cfg.constellation(kind);
    let scale = c.link.interferer_power() * cfg.channel.wavelength_factor();
    let alpha = c.link.pathloss_exp;
    let m = cfg.channel.nakagami_m;
    let parts = map_chunks(n, CHUNK, exec, |range| {
        let mut sums = vec![(0.0f64, 0.0f64); s_grid.len()];
        for i in range {
            let mut rng = trial_rng(seed, i);
            let pts = sample_visible(kind, cfg, &mut rng);
            let interference: f64 = pts
                .iter()
                .filter(|p| p.distance_km > r0)
                .map(|p| scale * p.distance_km.powf(-alpha) * sample_channel_gain(m, &mut rng))
                .sum();
            for (acc, &s) in sums.iter_mut().zip(s_grid) {
                let v = (-s * interference).exp();
                acc.0 += v;
                acc.1 += v * v;
            }
        }
        sums
    });
    (0..s_grid.len())
        .map(|j| {
            let (sum, sq) = parts.iter().fold((0.0, 0.0), |a, p| (a.0 + p[j].0, a.1 + p[j].1));
            EstimateWithCI::from_moments(sum, sq, n)
        })
        .collect()
}

/// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and
/// `cdf`. Sorts `samples` in place.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    samples.iter().enumerate().fold(0.0, |d: f64, (i, &x)| {
        let f = cdf(x);
        d.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs())
    })
}
