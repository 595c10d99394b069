//! Workload generators shared by the benchmarks.

use dbaug_core::{Instance, LabeledDataset, TimeSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random walk of `len` steps.
pub fn random_walk(rng: &mut impl Rng, len: usize) -> TimeSeries {
    let mut x = 0.0;
    let values = (0..len)
        .map(|_| {
            x += rng.random_range(-1.0..1.0);
            x
        })
        .collect();
    TimeSeries::new(values).expect("finite walk")
}

/// `classes` classes of `per_class` random walks each, all of length `len`.
pub fn walk_dataset(classes: usize, per_class: usize, len: usize, seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances = (0..classes)
        .flat_map(|c| (0..per_class).map(move |_| c))
        .map(|c| Instance::new(c.to_string(), random_walk(&mut rng, len)))
        .collect();
    LabeledDataset::new(instances).expect("nonempty")
}
