//! Parameter sweeps: one scenario per grid value, evaluated analytically,
//! by simulation, or both.

use std::time::Instant;

use geoleo_core::analytic::{coverage_curve, CoverageBreakdown};
use geoleo_core::channel::db_to_linear;
use geoleo_core::montecarlo::{estimate_with, EstimateWithCI};
use geoleo_core::par::par_map;
use geoleo_core::Execution;

use crate::config::{ConfigFile, Population, SweepMode, SweepVariable};

/// Probability columns, in output order.
pub const FIELDS: [&str; 12] = [
    "p_vis_geo",
    "p_vis_leo",
    "p_assc_geo",
    "p_assc_leo",
    "p_cov_geo",
    "p_cov_leo",
    "p_cov_nocross_geo",
    "p_cov_nocross_leo",
    "p_cov_total",
    "p_cov_given_visible",
    "p_cov_geo_only",
    "p_cov_leo_only",
];

pub fn analytic_fields(b: &CoverageBreakdown) -> [f64; 12] {
    [
        b.p_vis_geo,
        b.p_vis_leo,
        b.p_assc_geo,
        b.p_assc_leo,
        b.p_cov_geo,
        b.p_cov_leo,
        b.p_cov_geo_nocross,
        b.p_cov_leo_nocross,
        b.p_cov_total,
        b.p_cov_given_visible(),
        b.p_cov_geo_only_network(),
        b.p_cov_leo_only_network(),
    ]
}

/// Test statistic of a simulated proportion against the analytic value,
/// using the binomial error implied by the analytic value itself. `NaN` when
/// the conditioning event never occurred.
pub fn z_against(est: &EstimateWithCI, reference: f64) -> f64 {
    if est.n_trials == 0 || est.mean.is_nan() {
        return f64::NAN;
    }
    let p = reference.clamp(0.0, 1.0);
    let var = p * (1.0 - p) / est.n_trials as f64;
    let diff = est.mean - reference;
    if var > 0.0 {
        diff / var.sqrt()
    } else if diff.abs() < 1e-12 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RowData {
    Analytic([f64; 12]),
    MonteCarlo([EstimateWithCI; 12]),
    Validate {
        analytic: [f64; 12],
        mc: [EstimateWithCI; 12],
        z: [f64; 12],
    },
}

impl RowData {
    /// Largest finite-or-infinite `|z|`, ignoring undefined entries.
    pub fn max_abs_z(&self) -> Option<f64> {
        match self {
            RowData::Validate { z, .. } => Some(z.iter().filter(|v| !v.is_nan()).fold(0.0, |a, v| a.max(v.abs()))),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Swept value as given in the grid (dB for thresholds).
    pub value: f64,
    pub tau_db: f64,
    pub n_trials: u64,
    /// Per-point failures are recorded here instead of aborting the sweep.
    pub result: Result<RowData, String>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct GroupTiming {
    pub values: Vec<f64>,
    pub tau_db: Vec<f64>,
    pub runtime_s: f64,
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub variable: SweepVariable,
    pub mode: SweepMode,
    pub rows: Vec<SweepRow>,
    pub timings: Vec<GroupTiming>,
}

impl SweepOutput {
    /// Whether any row's `|z|` exceeds `threshold` in validate mode.
    pub fn gate_failed(&self, threshold: f64) -> bool {
        self.rows
            .iter()
            .filter_map(|r| r.result.as_ref().ok().and_then(RowData::max_abs_z))
            .any(|z| z > threshold)
    }

    pub fn error_count(&self) -> usize {
        self.rows.iter().filter(|r| r.result.is_err()).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub mode: SweepMode,
    pub seed: u64,
    pub trials: u64,
    /// Worker threads; `None` uses every core.
    pub workers: Option<usize>,
}

/// The configuration evaluated at one grid value of `variable`.
pub fn apply(base: &ConfigFile, variable: SweepVariable, value: f64) -> ConfigFile {
    let mut c = base.clone();
    match variable {
        SweepVariable::TauDb => {}
        SweepVariable::LatitudeDeg => c.latitude_deg = value,
        SweepVariable::BiasRatioDb => c.geo.bias_db = c.leo.bias_db + value,
        SweepVariable::LeoCount => c.leo.population = Population::Count(value),
        SweepVariable::GeoCount => c.geo.population = Population::Count(value),
        SweepVariable::PathlossRatio => c.geo.pathloss_exp = value * c.leo.pathloss_exp,
    }
    c
}

/// A unit of work: one scenario and the thresholds to evaluate it at.
struct Group {
    values: Vec<f64>,
    tau_db: Vec<f64>,
    config: ConfigFile,
}

fn groups(base: &ConfigFile, mode: SweepMode) -> Vec<Group> {
    let spec = &base.sweep;
    match spec.variable {
        // Analytic thresholds are independent; simulated ones share snapshots.
        SweepVariable::TauDb if mode == SweepMode::Analytic => spec
            .grid
            .iter()
            .map(|t| Group {
                values: vec![*t],
                tau_db: vec![*t],
                config: base.clone(),
            })
            .collect(),
        SweepVariable::TauDb => vec![Group {
            values: spec.grid.clone(),
            tau_db: spec.grid.clone(),
            config: base.clone(),
        }],
        v => spec
            .grid
            .iter()
            .map(|x| Group {
                values: vec![*x; spec.tau_db.len()],
                tau_db: spec.tau_db.clone(),
                config: apply(base, v, *x),
            })
            .collect(),
    }
}

fn mc_fields(report: &geoleo_core::montecarlo::CoverageReport, k: usize) -> [EstimateWithCI; 12] {
    let p = &report.points[k];
    [
        report.p_vis_geo,
        report.p_vis_leo,
        report.p_assc_geo,
        report.p_assc_leo,
        p.p_cov_geo,
        p.p_cov_leo,
        p.p_cov_geo_nocross,
        p.p_cov_leo_nocross,
        p.p_cov_total,
        p.p_cov_given_visible,
        p.p_cov_geo_only_network,
        p.p_cov_leo_only_network,
    ]
}

fn evaluate(group: &Group, opts: &RunOptions) -> Vec<Result<RowData, String>> {
    let fail = |e: String| vec![Err(e); group.tau_db.len()];
    let cfg = match group.config.to_scenario() {
        Ok(c) => c,
        Err(e) => return fail(e.to_string()),
    };
    let taus: Vec<f64> = group.tau_db.iter().map(|d| db_to_linear(*d)).collect();
    let exec = Execution::Parallel;
    let analytic = match opts.mode {
        SweepMode::MonteCarlo => None,
        _ => match coverage_curve(&taus, &cfg, exec) {
            Ok(c) => Some(c),
            Err(e) => return fail(e.to_string()),
        },
    };
    let mc = match opts.mode {
        SweepMode::Analytic => None,
        _ => match estimate_with(&cfg, &taus, opts.trials, opts.seed, exec) {
            Ok(r) => Some(r),
            Err(e) => return fail(e.to_string()),
        },
    };
    (0..taus.len())
        .map(|k| {
            Ok(match (&analytic, &mc) {
                (Some(a), None) => RowData::Analytic(analytic_fields(&a[k])),
                (None, Some(r)) => RowData::MonteCarlo(mc_fields(r, k)),
                (Some(a), Some(r)) => {
                    let analytic = analytic_fields(&a[k]);
                    let mc = mc_fields(r, k);
                    let z = std::array::from_fn(|i| z_against(&mc[i], analytic[i]));
                    RowData::Validate { analytic, mc, z }
                }
                (None, None) => unreachable!("every mode evaluates something"),
            })
        })
        .collect()
}

fn run_groups(groups: &[Group], opts: &RunOptions) -> Vec<(Vec<Result<RowData, String>>, f64)> {
    let work = |g: &Group| {
        let start = Instant::now();
        let rows = evaluate(g, opts);
        (rows, start.elapsed().as_secs_f64())
    };
    #[cfg(feature = "parallel")]
    if let Some(n) = opts.workers {
        match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => return pool.install(|| par_map(groups, Execution::Parallel, work)),
            Err(e) => eprintln!("warning: cannot build a pool of {n} workers ({e}); using the global pool"),
        }
    }
    par_map(groups, Execution::Parallel, work)
}

/// Evaluate every grid point of `base.sweep`. Points run concurrently but
/// rows come back in grid order, and simulated values depend only on the
/// seed, never on the worker count.
pub fn run_sweep(base: &ConfigFile, opts: &RunOptions) -> SweepOutput {
    let groups = groups(base, opts.mode);
    let results = run_groups(&groups, opts);
    let mut rows = Vec::new();
    let mut timings = Vec::new();
    for (g, (data, runtime_s)) in groups.iter().zip(results) {
        for ((value, tau_db), result) in g.values.iter().zip(&g.tau_db).zip(data) {
            rows.push(SweepRow {
                value: *value,
                tau_db: *tau_db,
                n_trials: if opts.mode == SweepMode::Analytic { 0 } else { opts.trials },
                result,
            });
        }
        timings.push(GroupTiming {
            values: g.values.clone(),
            tau_db: g.tau_db.clone(),
            runtime_s,
        });
    }
    SweepOutput {
        variable: base.sweep.variable,
        mode: opts.mode,
        rows,
        timings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config_str;

    fn opts(mode: SweepMode) -> RunOptions {
        RunOptions {
            mode,
            seed: 7,
            trials: 2000,
            workers: Some(2),
        }
    }

    #[test]
    fn apply_moves_one_parameter() {
        let base = ConfigFile::default();
        let c = apply(&base, SweepVariable::PathlossRatio, 1.2);
        assert!((c.geo.pathloss_exp - 3.6).abs() < 1e-12);
        assert_eq!(c.leo, base.leo);
        let c = apply(&base, SweepVariable::BiasRatioDb, -6.0);
        assert_eq!((c.geo.bias_db, c.leo.bias_db), (-6.0, 0.0));
        assert_eq!(apply(&base, SweepVariable::TauDb, 3.0), base);
    }

    #[test]
    fn rows_follow_grid_order() {
        let c = parse_config_str("sweep.variable = \"latitude_deg\"\nsweep.grid = [85, 60, 0]\nsweep.tau_db = [-5, 5]")
            .unwrap();
        let out = run_sweep(&c, &opts(SweepMode::Analytic));
        let keys: Vec<(f64, f64)> = out.rows.iter().map(|r| (r.value, r.tau_db)).collect();
        assert_eq!(keys, vec![(85.0, -5.0), (85.0, 5.0), (60.0, -5.0), (60.0, 5.0), (0.0, -5.0), (0.0, 5.0)]);
        assert_eq!(out.timings.len(), 3);
        // Beyond the inverse latitude only LEO is left.
        match &out.rows[0].result {
            Ok(RowData::Analytic(f)) => assert_eq!((f[0], f[3]), (0.0, 1.0)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_points_are_reported_in_row() {
        let c = parse_config_str("sweep.variable = \"pathloss_ratio\"\nsweep.grid = [0.5, 1.0]\nsweep.tau_db = [0]").unwrap();
        let out = run_sweep(&c, &opts(SweepMode::Analytic));
        assert!(out.rows[0].result.as_ref().unwrap_err().contains("geo.pathloss_exp"));
        assert!(out.rows[1].result.is_ok());
        assert_eq!(out.error_count(), 1);
    }

    #[test]
    fn simulation_is_worker_count_independent() {
        let c = parse_config_str("sweep.grid = [-10, 0]").unwrap();
        let a = run_sweep(&c, &opts(SweepMode::Validate));
        let b = run_sweep(&c, &RunOptions { workers: Some(1), ..opts(SweepMode::Validate) });
        assert_eq!(a.rows, b.rows);
        assert!(!a.gate_failed(6.0));
    }

    #[test]
    fn z_uses_reference_error() {
        let est = EstimateWithCI::from_counts(0, 1000);
        assert_eq!(z_against(&est, 0.0), 0.0);
        assert!(z_against(&est, 1e-30).abs() < 1e-10);
        assert!((z_against(&EstimateWithCI::from_counts(600, 1000), 0.5) - 100.0 / 250f64.sqrt()).abs() < 1e-9);
        assert!(z_against(&EstimateWithCI::from_counts(1, 1000), 0.0).is_infinite());
        assert!(z_against(&EstimateWithCI::from_counts(0, 0), 0.3).is_nan());
    }
}
