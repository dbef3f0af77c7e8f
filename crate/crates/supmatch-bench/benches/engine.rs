use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use supmatch::engine::{crowding_distance, nondominated_sort, Individual};
use supmatch::rng::substream;
use supmatch::{Matching, ObjectivePair};
use rand::Rng;

fn random_population(count: usize, seed: u64) -> Vec<Individual> {
    let mut rng = substream(seed, 0);
    (0..count)
        .map(|_| Individual {
            matching: Matching::from_assignment(vec![0], 1),
            objectives: ObjectivePair {
                students: rng.random::<f64>(),
                supervisors: rng.random::<f64>(),
            },
            rank: 0,
            crowding: 0.0,
        })
        .collect()
}

fn sorting(c: &mut Criterion) {
    let mut group = c.benchmark_group("nondominated_sort");
    for count in [64usize, 256, 1024] {
        let pop = random_population(count, 31);
        group.bench_with_input(BenchmarkId::from_parameter(count), &count, |b, _| {
            b.iter(|| {
                let mut pool = pop.clone();
                let fronts = nondominated_sort(&mut pool);
                for front in &fronts {
                    crowding_distance(&mut pool, front);
                }
                black_box(fronts.len())
            });
        });
    }
    group.finish();
}

criterion_group!(benches, sorting);
criterion_main!(benches);
