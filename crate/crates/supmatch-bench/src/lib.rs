//! Shared helpers for the criterion benches.

use supmatch::generator::bench_instance;
use supmatch::rng::substream;
use supmatch::{Matching, ProblemInstance};

/// A reproducible instance with one supervisor per ten students.
pub fn sized_instance(n: usize, seed: u64) -> ProblemInstance {
    let m = (n / 10).max(1);
    bench_instance(n, m, 5, &mut substream(seed, 0))
}

/// Reproducible random parent pairs for crossover benches.
pub fn parent_pairs(
    instance: &ProblemInstance,
    count: usize,
    seed: u64,
) -> Vec<(Matching, Matching)> {
    let mut rng = substream(seed, 1);
    (0..count)
        .map(|_| {
            (
                Matching::random_feasible(instance, &mut rng),
                Matching::random_feasible(instance, &mut rng),
            )
        })
        .collect()
}
