use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use splitclust::{approximate, decide, gen_random, kernelize, lower_bound, CorrelationGraph};

fn dense(n: usize, seed: u64) -> CorrelationGraph {
    gen_random(n, 0.3, 0.7, true, seed).unwrap()
}

fn bench_polynomial(c: &mut Criterion) {
    let mut group = c.benchmark_group("polynomial");
    for n in [50, 100, 200] {
        let g = dense(n, 1);
        group.bench_with_input(BenchmarkId::new("lower_bound", n), &g, |b, g| {
            b.iter(|| lower_bound(black_box(g)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("approximate", n), &g, |b, g| {
            b.iter(|| approximate(black_box(g)).unwrap())
        });
        // at k = lower bound the first cutoff passes and marking runs
        let k = lower_bound(&g).unwrap();
        group.bench_with_input(BenchmarkId::new("kernelize", n), &g, |b, g| {
            b.iter(|| kernelize(black_box(g), k).unwrap())
        });
    }
    group.finish();
}

fn bench_exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(20);
    for n in [6, 8, 10] {
        let g = dense(n, 7);
        let k = lower_bound(&g).unwrap() + 1;
        group.bench_with_input(BenchmarkId::new("decide", n), &g, |b, g| {
            b.iter(|| decide(black_box(g), k).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_polynomial, bench_exact);
criterion_main!(benches);
