//! Sequential against data-parallel execution of the main engines.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use tautring::relations::{bn_locus_strata, relations_up_to, EngineConfig};
use tautring::ring::{check_properties, window_top, SocleRing};
use tautring::socle::solve_proportionalities;
use tautring::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn config(exec: Execution) -> EngineConfig {
    EngineConfig { exec, ..EngineConfig::default() }
}

fn relations(c: &mut Criterion) {
    let mut group = c.benchmark_group("relations");
    group.sample_size(10);
    for g in [5, 6] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, g), &g, |b, &g| {
                b.iter(|| relations_up_to(black_box(g), window_top(g), &config(exec), None).unwrap())
            });
        }
    }
    group.finish();
}

fn porteous(c: &mut Criterion) {
    let mut group = c.benchmark_group("plane_quintic_locus");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| bn_locus_strata(6, 5, 2, &config(exec)).unwrap()));
    }
    group.finish();
}

fn socle(c: &mut Criterion) {
    let mut group = c.benchmark_group("socle");
    group.sample_size(10);
    for g in [10, 12] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(format!("solve/{name}"), g), &g, |b, &g| {
                b.iter(|| solve_proportionalities(black_box(g), exec).unwrap())
            });
        }
        let table = solve_proportionalities(g, Execution::Sequential).unwrap();
        let ring = SocleRing::new(table.clone(), Execution::Sequential);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(format!("properties/{name}"), g), &g, |b, _| {
                b.iter(|| check_properties(&table, &ring.bases, exec))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, relations, porteous, socle);
criterion_main!(benches);
