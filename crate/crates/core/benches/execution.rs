use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use geoleo_core::analytic::coverage_curve;
use geoleo_core::channel::db_to_linear;
use geoleo_core::montecarlo::estimate_with;
use geoleo_core::{Execution, ScenarioConfig};

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn monte_carlo(c: &mut Criterion) {
    let cfg = ScenarioConfig::default();
    let taus: Vec<f64> = [-10.0, 0.0, 10.0].iter().map(|&t| db_to_linear(t)).collect();
    let mut group = c.benchmark_group("montecarlo_estimate");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, 20_000), &exec, |b, &exec| {
            b.iter(|| estimate_with(&cfg, &taus, 20_000, 7, exec).unwrap())
        });
    }
    group.finish();
}

fn analytic_curve(c: &mut Criterion) {
    let cfg = ScenarioConfig::default();
    let taus: Vec<f64> = (-10..=20).step_by(5).map(|t| db_to_linear(t as f64)).collect();
    let mut group = c.benchmark_group("analytic_coverage_curve");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, taus.len()), &exec, |b, &exec| {
            b.iter(|| coverage_curve(&taus, &cfg, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, monte_carlo, analytic_curve);
criterion_main!(benches);
