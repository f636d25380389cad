use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use unfriendly_core::dynamics::{default_max_rounds, run, run_naive};
use unfriendly_core::harness::generate::{generate, Family, GeneratorSpec};
use unfriendly_core::{oracle, Coloring, Schedule, VertexMeasure};

fn torus_runs(c: &mut Criterion) {
    let mut group = c.benchmark_group("torus");
    group.sample_size(10);
    for side in [64usize, 256, 1000] {
        let g = generate(&GeneratorSpec::new(Family::Torus { rows: side, cols: side }, 0)).unwrap();
        let mu = VertexMeasure::uniform(g.vertex_count());
        let s = Schedule::greedy(&g);
        let c0 = Coloring::zeros(g.vertex_count());
        let budget = default_max_rounds(&g, &s);
        group.bench_with_input(BenchmarkId::new("incremental", side), &side, |b, _| {
            b.iter(|| run(&g, &mu, &s, &c0, budget).unwrap())
        });
    }
    group.finish();
}

fn engines_on_random_regular(c: &mut Criterion) {
    let mut group = c.benchmark_group("random_regular_n2000");
    let g = generate(&GeneratorSpec::new(Family::RandomRegular { n: 2000, d: 5 }, 1)).unwrap();
    let mu = VertexMeasure::uniform(g.vertex_count());
    let s = Schedule::greedy(&g);
    let c0 = Coloring::zeros(g.vertex_count());
    let budget = default_max_rounds(&g, &s);
    group.bench_function("incremental", |b| b.iter(|| run(&g, &mu, &s, &c0, budget).unwrap()));
    group.bench_function("naive", |b| b.iter(|| run_naive(&g, &mu, &s, &c0, budget).unwrap()));
    group.finish();
}

fn oracle_enumeration(c: &mut Criterion) {
    let g = generate(&GeneratorSpec::new(Family::Grid { rows: 4, cols: 4 }, 0)).unwrap();
    c.bench_function("oracle_grid_4x4", |b| b.iter(|| oracle::enumerate(&g).unwrap()));
}

criterion_group!(benches, torus_runs, engines_on_random_regular, oracle_enumeration);
criterion_main!(benches);
