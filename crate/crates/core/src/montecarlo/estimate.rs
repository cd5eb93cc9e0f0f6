//! Coverage estimation over many independent snapshots.


use super::sampling::trial_rng;
use super::snapshot::{snapshot_sinr, SnapshotOutcome};
use crate::error::{Error, Result};
use crate::par::{map_chunks, Execution};
use crate::scenario::{SatKind, ScenarioConfig};


/// Trials per work unit. Small enough to balance, large enough to amortise.
pub(crate) const CHUNK: u64 = 512;

/// Bernoulli proportion with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateWithCI {
    pub mean: f64,
    pub std_error: f64,
    pub n_trials: u64,
}

impl EstimateWithCI {
    /// `NaN` mean and error when `n == 0`.
    pub fn from_counts(hits: u64, n: u64) -> Self {
        if n == 0 {
            return Self {
                mean: f64::NAN,
                std_error: f64::NAN,
                n_trials: 0,
            };
        }
        let p = hits as f64 / n as f64;
        Self {
            mean: p,
            std_error: (p * (1.0 - p) / n as f64).sqrt(),
            n_trials: n,
        }
    }

    /// Sample mean and standard error of real-valued observations given their
    /// sum and sum of squares.
    pub fn from_moments(sum: f64, sum_sq: f64, n: u64) -> Self {
        if n == 0 {
            return Self::from_counts(0, 0);
        }
        let nf = n as f64;
        let mean = sum / nf;
        let var = if n > 1 { ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0) } else { 0.0 };
        Self {
            mean,
            std_error: (var / nf).sqrt(),
            n_trials: n,
        }
    }

    /// `(estimate - reference) / std_error`; zero when both the error and the
    /// difference vanish.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.mean - reference;
        if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }
}

/// Simulated counterpart of the analytic coverage breakdown at one
/// threshold. Conditional estimates carry their own conditioning count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoveragePoint {
    /// Linear SINR threshold.
    pub tau: f64,
    /// Coverage when associated with GEO, given both types visible.
    pub p_cov_geo: EstimateWithCI,
    pub p_cov_leo: EstimateWithCI,
    /// GEO-only network coverage given GEO is visible.
    pub p_cov_geo_nocross: EstimateWithCI,
    pub p_cov_leo_nocross: EstimateWithCI,
    pub p_cov_total: EstimateWithCI,
    pub p_cov_given_visible: EstimateWithCI,
    pub p_cov_geo_only_network: EstimateWithCI,
    pub p_cov_leo_only_network: EstimateWithCI,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub n_trials: u64,
    pub seed: u64,
    pub p_vis_geo: EstimateWithCI,
    pub p_vis_leo: EstimateWithCI,
    /// Association probabilities given both types are visible.
    pub p_assc_geo: EstimateWithCI,
    pub p_assc_leo: EstimateWithCI,
    pub points: Vec<CoveragePoint>,
}

#[derive(Debug, Clone, Copy, Default)]
struct PointTally {
    geo_both: u64,
    leo_both: u64,
    geo_nocross: u64,
    leo_nocross: u64,
    total: u64,
}

#[derive(Debug, Clone, Default)]
struct Tally {
    n: u64,
    geo_vis: u64,
    leo_vis: u64,
    any_vis: u64,
    both: u64,
    geo_assc_both: u64,
    points: Vec<PointTally>,
}

impl Tally {
    fn new(n_taus: usize) -> Self {
        Self {
            points: vec![PointTally::default(); n_taus],
            ..Self::default()
        }
    }

    fn add(&mut self, o: &SnapshotOutcome, taus: &[f64]) {
        self.n += 1;
        self.geo_vis += o.geo_visible as u64;
        self.leo_vis += o.leo_visible as u64;
        self.any_vis += (o.geo_visible || o.leo_visible) as u64;
        let both = o.geo_visible && o.leo_visible;
        self.both += both as u64;
        self.geo_assc_both += (both && o.serving == Some(SatKind::Geo)) as u64;
        let hit = |s: Option<f64>, tau: f64| s.is_some_and(|s| s >= tau) as u64;
        for (pt, &tau) in self.points.iter_mut().zip(taus) {
            let covered = hit(o.sinr, tau);
            pt.total += covered;
            if both {
                match o.serving {
                    Some(SatKind::Geo) => pt.geo_both += covered,
                    Some(SatKind::Leo) => pt.leo_both += covered,
                    None => {}
                }
            }
            pt.geo_nocross += hit(o.geo_only_sinr, tau);
            pt.leo_nocross += hit(o.leo_only_sinr, tau);
        }
    }

    fn merge(mut self, other: &Tally) -> Self {
        self.n += other.n;
        self.geo_vis += other.geo_vis;
        self.leo_vis += other.leo_vis;
        self.any_vis += other.any_vis;
        self.both += other.both;
        self.geo_assc_both += other.geo_assc_both;
        for (a, b) in self.points.iter_mut().zip(&other.points) {
            a.geo_both += b.geo_both;
            a.leo_both += b.leo_both;
            a.geo_nocross += b.geo_nocross;
            a.leo_nocross += b.leo_nocross;
            a.total += b.total;
        }
        self
    }

    fn report(&self, taus: &[f64], seed: u64) -> CoverageReport {
        let e = EstimateWithCI::from_counts;
        let leo_assc_both = self.both - self.geo_assc_both;
        CoverageReport {
            n_trials: self.n,
            seed,
            p_vis_geo: e(self.geo_vis, self.n),
            p_vis_leo: e(self.leo_vis, self.n),
            p_assc_geo: e(self.geo_assc_both, self.both),
            p_assc_leo: e(leo_assc_both, self.both),
            points: self
                .points
                .iter()
                .zip(taus)
                .map(|(pt, &tau)| CoveragePoint {
                    tau,
                    p_cov_geo: e(pt.geo_both, self.geo_assc_both),
                    p_cov_leo: e(pt.leo_both, leo_assc_both),
                    p_cov_geo_nocross: e(pt.geo_nocross, self.geo_vis),
                    p_cov_leo_nocross: e(pt.leo_nocross, self.leo_vis),
                    p_cov_total: e(pt.total, self.n),
                    p_cov_given_visible: e(pt.total, self.any_vis),
                    p_cov_geo_only_network: e(pt.geo_nocross, self.n),
                    p_cov_leo_only_network: e(pt.leo_nocross, self.n),
                })
                .collect(),
        }
    }
}

fn check_taus(taus: &[f64]) -> Result<()> {
    if let Some(t) = taus.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(Error::invalid("tau", format!("thresholds must be finite and nonnegative, got {t}")));
    }
    Ok(())
}

/// Estimate coverage at each linear threshold in `taus` from `n_trials`
/// snapshots. Trial `i` draws from its own stream of `seed`, so the report
/// is identical for every execution strategy and thread count.
pub fn estimate_with(
    cfg: &ScenarioConfig,
    taus: &[f64],
    n_trials: u64,
    seed: u64,
    exec: Execution,
) -> Result<CoverageReport> {
    cfg.validate()?;
    check_taus(taus)?;
    let tallies = map_chunks(n_trials, CHUNK, exec, |range| {
        let mut t = Tally::new(taus.len());
        for i in range {
            let outcome = snapshot_sinr(cfg, &mut trial_rng(seed, i));
            t.add(&outcome, taus);
        }
        t
    });
    let total = tallies.iter().fold(Tally::new(taus.len()), Tally::merge);
    Ok(total.report(taus, seed))
}

pub fn estimate(cfg: &ScenarioConfig, taus: &[f64], n_trials: u64, seed: u64) -> Result<CoverageReport> {
    estimate_with(cfg, taus, n_trials, seed, Execution::default())
}
