//! DTW barycentric averaging (DBA) and its weighted form.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;
use crate::warping::{distance_unchecked, path_unchecked, Window};

const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Nonnegative weights over distinct member indices, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightAssignment {
    entries: Vec<(usize, f64)>,
}

impl WeightAssignment {
    pub fn new(entries: Vec<(usize, f64)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidWeights("no entries".into()));
        }
        if let Some(&(i, w)) = entries.iter().find(|(_, w)| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidWeights(format!(
                "weight {w} for index {i} is not a nonnegative finite number"
            )));
        }
        let mut seen: Vec<usize> = entries.iter().map(|(i, _)| *i).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidWeights("duplicate index".into()));
        }
        let total: f64 = entries.iter().map(|(_, w)| w).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(Self { entries })
    }

    /// Uniform weights `1/n` over indices `0..n`.
    pub fn uniform(n: usize) -> Result<Self> {
        let w = 1.0 / n as f64;
        Self::new((0..n).map(|i| (i, w)).collect())
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|(_, w)| *w)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    /// Dense weight vector for a subset of `len` members. Fails unless the
    /// entries cover exactly `0..len`.
    fn dense(&self, len: usize) -> Result<Vec<f64>> {
        if self.entries.len() != len {
            return Err(Error::InvalidWeights(format!(
                "{} weights for a subset of {len} series",
                self.entries.len()
            )));
        }
        let mut dense = vec![0.0; len];
        for &(i, w) in &self.entries {
            if i >= len {
                return Err(Error::InvalidWeights(format!(
                    "index {i} out of range for a subset of {len} series"
                )));
            }
            dense[i] = w;
        }
        Ok(dense)
    }
}

/// Iteration budget and stopping rule for DBA.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DbaParams {
    pub max_iters: usize,
    /// Stop once the relative decrease of the objective falls below this.
    pub rel_tol: f64,
    pub window: Window,
}

impl Default for DbaParams {
    fn default() -> Self {
        Self {
            max_iters: 10,
            rel_tol: 1e-8,
            window: Window::Unconstrained,
        }
    }
}

impl DbaParams {
    fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidPolicy("max_iters must be positive".into()));
        }
        if !(self.rel_tol.is_finite() && self.rel_tol >= 0.0) {
            return Err(Error::InvalidPolicy("rel_tol must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Result of a DBA run, including the objective after every accepted update.
#[derive(Debug, Clone, PartialEq)]
pub struct DbaOutcome {
    pub average: TimeSeries,
    /// `objective[0]` is the objective at the initial average; entry `k` is
    /// the objective after update `k`.
    pub objective: Vec<f64>,
    pub iterations: usize,
}

/// Weighted DBA returning only the average.
pub fn weighted_dba(
    subset: &[TimeSeries],
    weights: &WeightAssignment,
    init: &TimeSeries,
    params: &DbaParams,
) -> Result<TimeSeries> {
    weighted_dba_traced(subset, weights, init, params).map(|o| o.average)
}

/// Uniformly weighted DBA.
pub fn dba(subset: &[TimeSeries], init: &TimeSeries, params: &DbaParams) -> Result<TimeSeries> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    params.validate()?;
    let w = vec![1.0 / subset.len() as f64; subset.len()];
    Ok(run(subset, &w, init, params).average)
}

/// Weighted DBA with the full objective trace.
pub fn weighted_dba_traced(
    subset: &[TimeSeries],
    weights: &WeightAssignment,
    init: &TimeSeries,
    params: &DbaParams,
) -> Result<DbaOutcome> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    params.validate()?;
    let dense = weights.dense(subset.len())?;
    Ok(run(subset, &dense, init, params))
}

/// Weighted DBA objective: `sum_i w_i * dtw(s_i, avg)`.
pub fn dba_objective(subset: &[TimeSeries], weights: &[f64], avg: &[f64], window: Window) -> f64 {
    subset
        .iter()
        .zip(weights)
        .map(|(s, w)| {
            if *w == 0.0 {
                0.0
            } else {
                w * distance_unchecked(s, avg, window)
            }
        })
        .sum()
}

fn run(
    subset: &[TimeSeries],
    weights: &[f64],
    init: &TimeSeries,
    params: &DbaParams,
) -> DbaOutcome {
    let mut avg = init.values().to_vec();
    let mut current = dba_objective(subset, weights, &avg, params.window);
    let mut objective = vec![current];
    let mut iterations = 0;

    while iterations < params.max_iters {
        avg = update(subset, weights, &avg, params.window);
        iterations += 1;
        let next = dba_objective(subset, weights, &avg, params.window);
        objective.push(next);
        let converged = current == 0.0 || (current - next) / current < params.rel_tol;
        current = next;
        if converged {
            break;
        }
    }

    DbaOutcome {
        average: TimeSeries::from_trusted(avg),
        objective,
        iterations,
    }
}

/// One DBA refinement. Paths run from the average (A) to each member (B);
/// coordinate t becomes the weighted mean of every member value aligned to it.
fn update(subset: &[TimeSeries], weights: &[f64], avg: &[f64], window: Window) -> Vec<f64> {
    let paths: Vec<_> = subset
        .par_iter()
        .zip(weights.par_iter())
        .map(|(s, &w)| (w > 0.0).then(|| path_unchecked(avg, s, window).0))
        .collect();

    let len = avg.len();
    let mut num = vec![0.0; len];
    let mut den = vec![0.0; len];
    let mut lo = vec![f64::INFINITY; len];
    let mut hi = vec![f64::NEG_INFINITY; len];
    // Merged in member order so the sums are bit-stable under any thread count.
    for ((s, &w), path) in subset.iter().zip(weights).zip(&paths) {
        let Some(path) = path else { continue };
        for &(t, j) in path.steps() {
            let v = s[j];
            num[t] += w * v;
            den[t] += w;
            lo[t] = lo[t].min(v);
            hi[t] = hi[t].max(v);
        }
    }

    (0..len)
        .map(|t| {
            if den[t] > 0.0 {
                // Rounding can push the quotient an ulp outside the hull of
                // the aligned values; clamp back.
                (num[t] / den[t]).clamp(lo[t], hi[t])
            } else {
                avg[t]
            }
        })
        .collect()
}
