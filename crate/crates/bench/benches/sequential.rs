use coloring_games::{brute_force_outcome, decide_outcome, Family, SequentialOrder};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bench_linear(c: &mut Criterion) {
    let mut group = c.benchmark_group("sequential_linear");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [1_000, 10_000, 100_000, 1_000_000] {
        let path = Family::Path(n).build().unwrap();
        let order = SequentialOrder::random(n, &mut rng);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &order, |b, order| {
            b.iter(|| decide_outcome(&path, order).unwrap())
        });
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("sequential_brute_force");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in [8, 12, 16] {
        let path = Family::Path(n).build().unwrap();
        let order = SequentialOrder::random(n, &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(n), &order, |b, order| {
            b.iter(|| brute_force_outcome(&path, order).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_linear, bench_oracle);
criterion_main!(benches);
