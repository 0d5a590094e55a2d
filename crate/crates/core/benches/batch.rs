use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dfvs_core::oracle::{brute_force_dfvs, OracleLimit};
use dfvs_core::random::random_digraph_with_bi_edges;
use dfvs_core::{solve_many, solve_many_sequential, DiGraph, SolveConfig};
use std::hint::black_box;

fn corpus(count: u64, n: usize) -> Vec<DiGraph> {
    (0..count)
        .map(|seed| random_digraph_with_bi_edges(n, 0.12, 0.3, seed))
        .collect()
}

fn batch(c: &mut Criterion) {
    let config = SolveConfig::default();
    let mut group = c.benchmark_group("solve_batch");
    group.sample_size(10);
    for n in [30, 45] {
        let graphs = corpus(32, n);
        group.bench_with_input(BenchmarkId::new("sequential", n), &graphs, |b, gs| {
            b.iter(|| solve_many_sequential(black_box(gs), &config))
        });
        group.bench_with_input(BenchmarkId::new("parallel", n), &graphs, |b, gs| {
            b.iter(|| solve_many(black_box(gs), &config))
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let graphs = corpus(4, 20);
    let limit = OracleLimit {
        max_n: 20,
        max_subsets: 1 << 20,
    };
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("subset_enumeration_n20", |b| {
        b.iter(|| {
            for g in &graphs {
                black_box(brute_force_dfvs(g, &limit).unwrap());
            }
        })
    });
    group.finish();
}

criterion_group!(benches, batch, oracle);
criterion_main!(benches);
