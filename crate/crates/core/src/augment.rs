//! Class-conditional synthetic series generation with the "Average Selected"
//! weighting scheme.
//!
//! For every synthetic series a seed is drawn uniformly from one class. The
//! seed gets `seed_weight`; `boosted_count` of its `neighbor_count` nearest
//! in-class neighbours (by DTW) are drawn at random and get `boosted_weight`
//! each; the remaining neighbours split `residual_mass`. A weighted DBA
//! started from the seed produces the new series.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::barycenter::{weighted_dba, DbaParams, WeightAssignment};
use crate::dataset::{Instance, LabeledDataset};
use crate::error::{Error, Result};
use crate::series::{Label, TimeSeries};
use crate::warping::{distance_unchecked, Window};

const WEIGHT_SUM_TOL: f64 = 1e-12;

/// How many synthetic series each class receives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizingRule {
    /// Raise every class to `multiplier` times the largest class count.
    BalanceToLargest { multiplier: usize },
    /// Generate exactly this many series for every class.
    FixedPerClass { count: usize },
}

impl Default for SizingRule {
    fn default() -> Self {
        SizingRule::BalanceToLargest { multiplier: 2 }
    }
}

impl SizingRule {
    /// Number of series to generate for a class of `class_count` when the
    /// largest class has `largest` members.
    pub fn generated_for(&self, class_count: usize, largest: usize) -> usize {
        match *self {
            SizingRule::BalanceToLargest { multiplier } => {
                (multiplier * largest).saturating_sub(class_count)
            }
            SizingRule::FixedPerClass { count } => count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugmentationPolicy {
    pub neighbor_count: usize,
    pub boosted_count: usize,
    pub seed_weight: f64,
    pub boosted_weight: f64,
    pub residual_mass: f64,
    pub sizing: SizingRule,
    pub master_seed: u64,
}

impl Default for AugmentationPolicy {
    fn default() -> Self {
        Self {
            neighbor_count: 5,
            boosted_count: 2,
            seed_weight: 0.5,
            boosted_weight: 0.15,
            residual_mass: 0.2,
            sizing: SizingRule::default(),
            master_seed: 0,
        }
    }
}

impl AugmentationPolicy {
    pub fn with_seed(mut self, master_seed: u64) -> Self {
        self.master_seed = master_seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidPolicy(msg));
        if self.neighbor_count == 0 {
            return bad("neighbor_count must be positive".into());
        }
        if self.boosted_count == 0 || self.boosted_count > self.neighbor_count {
            return bad(format!(
                "boosted_count must be in 1..={}, got {}",
                self.neighbor_count, self.boosted_count
            ));
        }
        for (name, w) in [
            ("seed_weight", self.seed_weight),
            ("boosted_weight", self.boosted_weight),
            ("residual_mass", self.residual_mass),
        ] {
            if !(w.is_finite() && w >= 0.0) {
                return bad(format!("{name} must be a nonnegative number, got {w}"));
            }
        }
        if self.seed_weight <= 0.0 {
            return bad("seed_weight must be positive".into());
        }
        let total =
            self.seed_weight + self.boosted_count as f64 * self.boosted_weight + self.residual_mass;
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return bad(format!(
                "seed + boosted_count * boosted + residual must equal 1, got {total}"
            ));
        }
        if let SizingRule::BalanceToLargest { multiplier: 0 } = self.sizing {
            return bad("sizing multiplier must be positive".into());
        }
        Ok(())
    }
}

/// Average Selected weights for `seed_index` within `class_members`.
///
/// The returned entries index into `class_members`: the seed first, then its
/// nearest neighbours in rank order (ties broken by smaller index).
pub fn assign_weights_average_selected<R: Rng + ?Sized>(
    class_members: &[TimeSeries],
    seed_index: usize,
    policy: &AugmentationPolicy,
    window: Window,
    rng: &mut R,
) -> Result<WeightAssignment> {
    policy.validate()?;
    if seed_index >= class_members.len() {
        return Err(Error::IndexOutOfRange {
            index: seed_index,
            len: class_members.len(),
        });
    }
    if class_members.len() < 2 {
        return Err(Error::InvalidWeights(
            "a class with a single member has no neighbours".into(),
        ));
    }
    let seed = &class_members[seed_index];
    let distances: Vec<f64> = class_members
        .iter()
        .map(|s| distance_unchecked(seed, s, window))
        .collect();
    weights_from_distances(seed_index, &distances, policy, rng)
}

/// Weight assignment given the DTW distances from the seed to every class
/// member (the seed's own entry is ignored).
fn weights_from_distances<R: Rng + ?Sized>(
    seed_index: usize,
    distances: &[f64],
    policy: &AugmentationPolicy,
    rng: &mut R,
) -> Result<WeightAssignment> {
    let mut ranked: Vec<usize> = (0..distances.len()).filter(|&i| i != seed_index).collect();
    ranked.sort_by(|&x, &y| distances[x].total_cmp(&distances[y]).then(x.cmp(&y)));
    let k = policy.neighbor_count.min(ranked.len());
    ranked.truncate(k);

    let boosted = policy.boosted_count.min(k);
    let mut is_boosted = vec![false; k];
    for pos in sample(rng, k, boosted) {
        is_boosted[pos] = true;
    }

    let rest = k - boosted;
    let share = if rest > 0 {
        policy.residual_mass / rest as f64
    } else {
        0.0
    };
    let mut entries = Vec::with_capacity(k + 1);
    entries.push((seed_index, policy.seed_weight));
    for (&idx, &b) in ranked.iter().zip(&is_boosted) {
        entries.push((idx, if b { policy.boosted_weight } else { share }));
    }

    let total: f64 = entries.iter().map(|(_, w)| w).sum();
    if (total - 1.0).abs() > WEIGHT_SUM_TOL {
        for (_, w) in &mut entries {
            *w /= total;
        }
    }
    WeightAssignment::new(entries)
}

/// Independent random stream for one generation, keyed by
/// (master seed, class position, generation index).
pub fn generation_rng(master_seed: u64, class_id: usize, generation: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&master_seed.to_le_bytes());
    key[8..16].copy_from_slice(&(class_id as u64).to_le_bytes());
    key[16..24].copy_from_slice(&(generation as u64).to_le_bytes());
    key[24..].copy_from_slice(b"dbaug/v1");
    ChaCha8Rng::from_seed(key)
}

/// One generated series with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Synthetic {
    pub label: Label,
    pub series: TimeSeries,
    /// Dataset index of the seed.
    pub seed: usize,
    /// Weights keyed by dataset index.
    pub weights: WeightAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipDiagnostic {
    pub label: Label,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generation {
    pub samples: Vec<Synthetic>,
    pub skipped: Option<SkipDiagnostic>,
}

/// Generates `count` synthetic series for `label` from the members of that
/// class in `dataset`.
pub fn generate_synthetic(
    dataset: &LabeledDataset,
    label: &Label,
    count: usize,
    policy: &AugmentationPolicy,
    dba_params: &DbaParams,
) -> Result<Generation> {
    policy.validate()?;
    let class_id = dataset
        .class_index(label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
    let members = dataset.members_of(label);
    let series: Vec<&TimeSeries> = members
        .iter()
        .map(|&i| &dataset.instances()[i].series)
        .collect();

    if count == 0 {
        return Ok(Generation {
            samples: Vec::new(),
            skipped: None,
        });
    }
    if members.len() < 2 {
        return Ok(Generation {
            samples: Vec::new(),
            skipped: Some(SkipDiagnostic {
                label: label.clone(),
                reason: "class has a single training instance, no neighbours to average".into(),
            }),
        });
    }

    let draw_seed = |rng: &mut ChaCha8Rng| rng.random_range(0..members.len());

    // Distance rows only for the seeds that will actually be drawn.
    let mut seeds: Vec<usize> = (0..count)
        .map(|g| draw_seed(&mut generation_rng(policy.master_seed, class_id, g)))
        .collect();
    seeds.sort_unstable();
    seeds.dedup();
    let mut rows: Vec<Option<Vec<f64>>> = vec![None; members.len()];
    let computed: Vec<(usize, Vec<f64>)> = seeds
        .par_iter()
        .map(|&s| {
            let row = series
                .iter()
                .map(|other| distance_unchecked(series[s], other, dba_params.window))
                .collect();
            (s, row)
        })
        .collect();
    for (s, row) in computed {
        rows[s] = Some(row);
    }

    let samples = (0..count)
        .into_par_iter()
        .map(|g| {
            let mut rng = generation_rng(policy.master_seed, class_id, g);
            let seed = draw_seed(&mut rng);
            let row = rows[seed]
                .as_ref()
                .expect("distance row computed for every drawn seed");
            let local = weights_from_distances(seed, row, policy, &mut rng)?;

            let subset: Vec<TimeSeries> = local.indices().map(|i| series[i].clone()).collect();
            let subset_weights = WeightAssignment::new(local.weights().enumerate().collect())?;
            let generated = weighted_dba(&subset, &subset_weights, series[seed], dba_params)?;

            let weights = WeightAssignment::new(
                local
                    .entries()
                    .iter()
                    .map(|&(i, w)| (members[i], w))
                    .collect(),
            )?;
            Ok(Synthetic {
                label: label.clone(),
                series: generated,
                seed: members[seed],
                weights,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Generation {
        samples,
        skipped: None,
    })
}

/// An augmented dataset plus per-class bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Augmented {
    /// Originals first in their original order, then synthetic series
    /// ordered by (class, generation index).
    pub dataset: LabeledDataset,
    /// Number of series actually generated per class, in class order.
    pub generated: Vec<(Label, usize)>,
    pub skipped: Vec<SkipDiagnostic>,
}

pub fn augment_dataset(
    dataset: &LabeledDataset,
    policy: &AugmentationPolicy,
    dba_params: &DbaParams,
) -> Result<Augmented> {
    policy.validate()?;
    let counts = dataset.class_counts();
    let largest = counts.iter().map(|(_, n)| *n).max().unwrap_or(0);

    let mut instances = dataset.instances().to_vec();
    let mut generated = Vec::with_capacity(counts.len());
    let mut skipped = Vec::new();

    for (label, n) in &counts {
        let wanted = policy.sizing.generated_for(*n, largest);
        let generation = generate_synthetic(dataset, label, wanted, policy, dba_params)?;
        generated.push((label.clone(), generation.samples.len()));
        skipped.extend(generation.skipped);
        instances.extend(
            generation
                .samples
                .into_iter()
                .map(|s| Instance::new(s.label, s.series)),
        );
    }

    let mut out = LabeledDataset::new(instances)?;
    if let Some(name) = dataset.name() {
        out = out.with_name(name);
    }
    Ok(Augmented {
        dataset: out,
        generated,
        skipped,
    })
}
