use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use isored::randgen::{gen_sparse_stochastic, BurrConfig, SparseGenConfig};
use isored::{
    direct_stationary, isospectral_stationary, perron_frobenius, reduce_block, reduce_sequential, select_subset,
    SelectionStrategy, SolverConfig, StochasticMatrix,
};

fn instance(n: usize) -> StochasticMatrix {
    let burr = BurrConfig::new(0.2).unwrap();
    gen_sparse_stochastic(&SparseGenConfig {
        n,
        nnz_per_col: 4,
        burr,
        seed: 7,
    })
    .unwrap()
}

fn reductions(c: &mut Criterion) {
    let mut g = c.benchmark_group("reduce");
    g.sample_size(20);
    for n in [250, 1000] {
        let a = instance(n);
        let kept = select_subset(&a, &SelectionStrategy::RandomS { s: n / 10, seed: 3 }).unwrap();
        g.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, _| {
            b.iter(|| reduce_sequential(&a, &kept).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("block", n), &n, |b, _| {
            b.iter(|| reduce_block(&a, &kept).unwrap())
        });
    }
    g.finish();
}

fn stationary(c: &mut Criterion) {
    let mut g = c.benchmark_group("stationary");
    g.sample_size(10);
    let a = instance(1000);
    let cfg = SolverConfig::default()
        .with_seed(5)
        .with_strategy(SelectionStrategy::RandomS { s: 90, seed: 5 });
    g.bench_function("direct", |b| b.iter(|| direct_stationary(&a).unwrap()));
    g.bench_function("power", |b| b.iter(|| perron_frobenius(&a, &cfg).unwrap()));
    g.bench_function("isospectral", |b| b.iter(|| isospectral_stationary(&a, &cfg).unwrap()));
    g.finish();
}

criterion_group!(benches, reductions, stationary);
criterion_main!(benches);
