use criterion::{criterion_group, criterion_main, Criterion};
use dbaug_bench::{random_walk, walk_dataset};
use dbaug_core::{augment_dataset, weighted_dba, AugmentationPolicy, DbaParams, WeightAssignment};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn bench_dba(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let subset: Vec<_> = (0..6).map(|_| random_walk(&mut rng, 150)).collect();
    let r = 0.2 / 3.0;
    let weights =
        WeightAssignment::new(vec![(0, 0.5), (1, 0.15), (2, 0.15), (3, r), (4, r), (5, r)])
            .unwrap();
    let params = DbaParams::default();
    c.bench_function("weighted_dba/6x150", |b| {
        b.iter(|| weighted_dba(black_box(&subset), &weights, &subset[0], &params).unwrap())
    });
}

fn bench_augment(c: &mut Criterion) {
    let data = walk_dataset(5, 20, 150, 5);
    let policy = AugmentationPolicy::default().with_seed(42);
    let params = DbaParams::default();
    let mut group = c.benchmark_group("augment");
    group.sample_size(10);
    group.bench_function("100x150_5_classes", |b| {
        b.iter(|| augment_dataset(black_box(&data), &policy, &params).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_dba, bench_augment);
criterion_main!(benches);
