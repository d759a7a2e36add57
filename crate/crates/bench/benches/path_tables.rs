use coloring_games::{GrundyTable, TableMode};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("grundy_table");
    group.sample_size(10);
    for bound in [2_000, 10_000] {
        for (name, mode) in [("naive", TableMode::Naive), ("accelerated", TableMode::Accelerated)] {
            group.bench_with_input(BenchmarkId::new(name, bound), &bound, |b, &k| {
                b.iter(|| GrundyTable::compute(k, mode).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_persistence(c: &mut Criterion) {
    let table = GrundyTable::compute(10_000, TableMode::Naive).unwrap();
    let bytes = table.to_bytes();
    c.bench_function("table_round_trip_10k", |b| b.iter(|| GrundyTable::from_bytes(&table.to_bytes()).unwrap()));
    c.bench_function("table_decode_10k", |b| b.iter(|| GrundyTable::from_bytes(&bytes).unwrap()));
}

criterion_group!(benches, bench_tables, bench_persistence);
criterion_main!(benches);
