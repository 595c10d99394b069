//! Seeded synthetic datasets for tests.

#![allow(dead_code)]

use dbaug_core::{Instance, LabeledDataset, TimeSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ts(v: &[f64]) -> TimeSeries {
    TimeSeries::new(v.to_vec()).unwrap()
}

pub fn random_series(rng: &mut impl Rng, len: usize, lo: f64, hi: f64) -> TimeSeries {
    TimeSeries::new((0..len).map(|_| rng.random_range(lo..hi)).collect()).unwrap()
}

/// Noisy sine, one period with a random phase jitter.
pub fn sinusoid(rng: &mut impl Rng, len: usize) -> TimeSeries {
    let phase = rng.random_range(-0.3..0.3);
    let values = (0..len)
        .map(|t| {
            let x = 2.0 * std::f64::consts::PI * t as f64 / len as f64 + phase;
            x.sin() + rng.random_range(-0.1..0.1)
        })
        .collect();
    TimeSeries::new(values).unwrap()
}

/// Noisy rising ramp from -1 to 1.
pub fn ramp(rng: &mut impl Rng, len: usize) -> TimeSeries {
    let values = (0..len)
        .map(|t| -1.0 + 2.0 * t as f64 / (len - 1) as f64 + rng.random_range(-0.1..0.1))
        .collect();
    TimeSeries::new(values).unwrap()
}

/// `per_class` sinusoids labeled "sine" followed by `per_class` ramps
/// labeled "ramp".
pub fn sine_vs_ramp(per_class: usize, len: usize, seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = Vec::new();
    for _ in 0..per_class {
        v.push(Instance::new("sine", sinusoid(&mut rng, len)));
    }
    for _ in 0..per_class {
        v.push(Instance::new("ramp", ramp(&mut rng, len)));
    }
    LabeledDataset::new(v).unwrap()
}

/// Random-valued dataset with the given per-class counts.
pub fn counted(counts: &[(&str, usize)], len: usize, seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = Vec::new();
    for (label, n) in counts {
        for _ in 0..*n {
            v.push(Instance::new(
                *label,
                random_series(&mut rng, len, -2.0, 2.0),
            ));
        }
    }
    LabeledDataset::new(v).unwrap()
}
