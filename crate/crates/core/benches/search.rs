//! Sequential against rayon-parallel execution of the batch workloads.
//!
//! With the `parallel` feature disabled both variants run sequentially.

use auxetic::analysis::{deformation_space, find_strict_auxetic, SearchConfig};
use auxetic::designer::{search_octuple, OctupleSearch};
use auxetic::generator::{builtin_tetrahedral, generate_batch, GeneratorConfig};
use auxetic::model::QuotientMultigraph;
use auxetic::ratmath::rat;
use auxetic::ExecMode;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn multistart(c: &mut Criterion) {
    let (fw, _) = builtin_tetrahedral(&rat(12, 5), &rat(6, 5)).unwrap();
    let space = deformation_space(&fw);
    let mut group = c.benchmark_group("find_strict_auxetic/tetrahedral");
    for (name, mode) in MODES {
        let config = SearchConfig {
            starts: 64,
            mode,
            ..Default::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(find_strict_auxetic(&space, &config)))
        });
    }
    group.finish();
}

fn seed_sweep(c: &mut Criterion) {
    let g = QuotientMultigraph::complete(4, 2).unwrap();
    let seeds: Vec<u64> = (0..16).collect();
    let mut group = c.benchmark_group("generate_batch/doubled-k4-3d");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(generate_batch(&g, 3, &seeds, &GeneratorConfig::default(), mode)))
        });
    }
    group.finish();
}

fn octuples(c: &mut Criterion) {
    let mut group = c.benchmark_group("search_octuple/seed-0");
    group.sample_size(10);
    for (name, mode) in MODES {
        let search = OctupleSearch {
            trials: 64,
            mode,
            ..Default::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| black_box(search_octuple(&search))));
    }
    group.finish();
}

criterion_group!(benches, multistart, seed_sweep, octuples);
criterion_main!(benches);
