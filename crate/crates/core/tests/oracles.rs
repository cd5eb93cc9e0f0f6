//! Analytic results against the Monte Carlo simulator at moderate sample
//! sizes. The acceptance suite repeats the central checks at full size.

use geoleo_core::analytic::{
    laplace_interference, p_assc_geo, p_cov_total, p_vis, NearestDistance,
};
use geoleo_core::channel::db_to_linear;
use geoleo_core::geometry::TerminalLocation;
use geoleo_core::montecarlo::{
    association_frequency, estimate, ks_statistic, laplace_functional_estimate, nearest_distances,
};
use geoleo_core::{CoverageModel, Execution, SatKind, ScenarioConfig};

const EXEC: Execution = Execution::Parallel;

fn at_latitude(deg: f64) -> ScenarioConfig {
    let mut cfg = ScenarioConfig::default();
    cfg.terminal = TerminalLocation::from_degrees(deg, 0.0).unwrap();
    cfg
}

fn loud(mut cfg: ScenarioConfig, gain_db: f64) -> ScenarioConfig {
    for c in [&mut cfg.geo, &mut cfg.leo] {
        c.link.mainlobe_gain *= db_to_linear(gain_db);
        c.link.interferer_gain *= db_to_linear(gain_db);
    }
    cfg
}

#[test]
fn sparse_geo_visibility() {
    // Few GEO satellites make the visibility probability interesting.
    let mut cfg = at_latitude(60.0);
    cfg.geo.density = geoleo_core::scenario::geo_density_from_count(4.0, &cfg.geom);
    let r = estimate(&cfg, &[], 40_000, 3).unwrap();
    let p = p_vis(SatKind::Geo, &cfg);
    assert!(p > 0.2 && p < 0.8);
    assert!((r.p_vis_geo.mean - p).abs() <= 4.0 * r.p_vis_geo.std_error);
}

#[test]
fn nearest_distance_laws() {
    for (deg, n_geo) in [(20.0, 1000.0), (50.0, 6.0)] {
        let mut cfg = at_latitude(deg);
        cfg.geo.density = geoleo_core::scenario::geo_density_from_count(n_geo, &cfg.geom);
        for kind in SatKind::ALL {
            let law = NearestDistance::new(kind, &cfg).unwrap();
            let mut xs = nearest_distances(kind, &cfg, 20_000, 8, EXEC).unwrap();
            let b = law.bounds();
            assert!(xs.iter().all(|x| *x >= b.r_min_km - 1e-6 && *x <= b.r_vis_max_km + 1e-6));
            let d = ks_statistic(&mut xs, |r| law.cdf_extended(r));
            // 1.63 / sqrt(n) is the 1% critical value
            assert!(d < 1.63 / (20_000f64).sqrt(), "{kind} at {deg}: KS {d}");
        }
    }
}

#[test]
fn association_against_simulation() {
    let mut cfg = at_latitude(40.0);
    cfg.geo.link.pathloss_exp = 3.6;
    cfg.leo.link.pathloss_exp = 4.0;
    cfg.leo.link.tx_power_w = cfg.geo.link.tx_power_w / db_to_linear(50.0);
    let analytic = p_assc_geo(&cfg).unwrap();
    let mc = association_frequency(&cfg, 30_000, 5, EXEC).unwrap();
    assert!(analytic > 0.05 && analytic < 0.95);
    assert!((mc.mean - analytic).abs() <= 4.0 * mc.std_error, "{analytic} vs {mc:?}");
}

#[test]
fn laplace_against_simulation() {
    let cfg = at_latitude(30.0);
    for kind in SatKind::ALL {
        let r0 = NearestDistance::new(kind, &cfg).unwrap().quantile(0.5);
        let s_half = half_point(kind, r0, &cfg);
        let grid: Vec<f64> = [0.2, 1.0, 5.0].iter().map(|k| k * s_half).collect();
        let mc = laplace_functional_estimate(kind, &grid, r0, &cfg, 20_000, 21, EXEC);
        for (s, e) in grid.iter().zip(&mc) {
            let a = laplace_interference(kind, *s, r0, &cfg).unwrap();
            assert!((a - e.mean).abs() <= 4.0 * e.std_error + 1e-3, "{kind} s={s}: {a} vs {e:?}");
        }
    }
}

/// `s` at which the analytic transform equals one half.
fn half_point(kind: SatKind, r0: f64, cfg: &ScenarioConfig) -> f64 {
    let (mut lo, mut hi) = (-40.0f64, 40.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if laplace_interference(kind, 10f64.powf(mid), r0, cfg).unwrap() > 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    10f64.powf(0.5 * (lo + hi))
}

#[test]
fn single_network_coverage_matches_at_rayleigh() {
    // Without cross-type interference both models reduce to the same,
    // exact, expression at m = 1.
    let cfg = loud(ScenarioConfig::default(), 60.0);
    let taus: Vec<f64> = [-5.0, 0.0, 5.0].iter().map(|d| db_to_linear(*d)).collect();
    let mc = estimate(&cfg, &taus, 30_000, 17).unwrap();
    for (pt, tau) in mc.points.iter().zip(&taus) {
        let a = p_cov_total(*tau, &cfg).unwrap();
        for (an, est) in [
            (a.p_cov_geo_nocross, pt.p_cov_geo_nocross),
            (a.p_cov_leo_nocross, pt.p_cov_leo_nocross),
            (a.p_cov_leo_only_network(), pt.p_cov_leo_only_network),
        ] {
            assert!((an - est.mean).abs() <= 4.0 * est.std_error + 2e-3, "{an} vs {est:?}");
        }
    }
}

#[test]
fn association_conditioned_coverage_is_exact_at_rayleigh() {
    let mut cfg = loud(ScenarioConfig::default(), 60.0);
    cfg.coverage_model = CoverageModel::AssociationConditioned;
    let taus: Vec<f64> = [-10.0, -5.0, 0.0, 5.0].iter().map(|d| db_to_linear(*d)).collect();
    let mc = estimate(&cfg, &taus, 30_000, 23).unwrap();
    for (pt, tau) in mc.points.iter().zip(&taus) {
        let a = p_cov_total(*tau, &cfg).unwrap();
        for (an, est) in [
            (a.p_cov_total, pt.p_cov_total),
            (a.p_cov_geo, pt.p_cov_geo),
            (a.p_cov_leo, pt.p_cov_leo),
        ] {
            assert!((an - est.mean).abs() <= 4.0 * est.std_error + 2e-3, "{an} vs {est:?}");
        }
    }
}

#[test]
fn sequential_and_parallel_reports_are_identical() {
    let cfg = loud(at_latitude(10.0), 60.0);
    let taus = [db_to_linear(0.0)];
    let a = geoleo_core::montecarlo::estimate_with(&cfg, &taus, 5_000, 99, Execution::Sequential).unwrap();
    let b = geoleo_core::montecarlo::estimate_with(&cfg, &taus, 5_000, 99, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}
