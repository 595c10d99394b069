//! Dynamic time warping.
//!
//! The pointwise cost is the squared difference and the reported distance is
//! the raw accumulated sum along the optimal path (no square root).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Admissible region of the DTW cost matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    #[default]
    Unconstrained,
    /// Sakoe-Chiba band: cell (i, j) is admissible iff |i - j| <= radius.
    /// The radius is widened to |n - m| so the end cell stays reachable.
    SakoeChiba(usize),
}

impl Window {
    fn radius(self, n: usize, m: usize) -> usize {
        match self {
            Window::Unconstrained => usize::MAX,
            Window::SakoeChiba(r) => r.max(n.abs_diff(m)),
        }
    }

    /// Column range `[lo, hi)` admissible in row `i`.
    #[inline]
    fn columns(radius: usize, i: usize, m: usize) -> (usize, usize) {
        if radius == usize::MAX {
            (0, m)
        } else {
            (
                i.saturating_sub(radius),
                (i.saturating_add(radius) + 1).min(m),
            )
        }
    }
}

/// Monotone, contiguous alignment between series A (rows) and B (columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WarpingPath {
    steps: Vec<(usize, usize)>,
}

impl WarpingPath {
    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn into_steps(self) -> Vec<(usize, usize)> {
        self.steps
    }

    /// Accumulated squared difference along the path, summed from (0, 0).
    pub fn cost(&self, a: &[f64], b: &[f64]) -> f64 {
        self.steps
            .iter()
            .fold(0.0, |acc, &(i, j)| sq(a[i], b[j]) + acc)
    }

    /// Checks the endpoint, step and length invariants against series
    /// lengths `n` and `m`.
    pub fn is_valid_for(&self, n: usize, m: usize) -> bool {
        let (Some(&first), Some(&last)) = (self.steps.first(), self.steps.last()) else {
            return false;
        };
        if n == 0 || m == 0 || first != (0, 0) || last != (n - 1, m - 1) {
            return false;
        }
        let contiguous = self.steps.windows(2).all(|w| {
            let (di, dj) = (w[1].0.wrapping_sub(w[0].0), w[1].1.wrapping_sub(w[0].1));
            matches!((di, dj), (1, 0) | (0, 1) | (1, 1))
        });
        contiguous && self.steps.len() >= n.max(m) && self.steps.len() < n + m
    }
}

#[inline]
fn sq(x: f64, y: f64) -> f64 {
    let d = x - y;
    d * d
}

fn check(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::EmptySeries);
    }
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite {
            index,
            value: values[index],
        }),
        None => Ok(()),
    }
}

/// Unconstrained DTW distance between two series.
pub fn dtw_distance(a: &TimeSeries, b: &TimeSeries) -> f64 {
    distance_unchecked(a, b, Window::Unconstrained)
}

/// DTW distance restricted to `window`.
pub fn dtw_distance_windowed(a: &TimeSeries, b: &TimeSeries, window: Window) -> f64 {
    distance_unchecked(a, b, window)
}

/// DTW distance over raw slices, validating emptiness and finiteness.
pub fn dtw_distance_slices(a: &[f64], b: &[f64], window: Window) -> Result<f64> {
    check(a)?;
    check(b)?;
    Ok(distance_unchecked(a, b, window))
}

/// Optimal warping path and its cost, unconstrained.
pub fn dtw_path(a: &TimeSeries, b: &TimeSeries) -> (WarpingPath, f64) {
    path_unchecked(a, b, Window::Unconstrained)
}

/// Optimal warping path and its cost restricted to `window`.
pub fn dtw_path_windowed(a: &TimeSeries, b: &TimeSeries, window: Window) -> (WarpingPath, f64) {
    path_unchecked(a, b, window)
}

/// Path variant of [`dtw_distance_slices`].
pub fn dtw_path_slices(a: &[f64], b: &[f64], window: Window) -> Result<(WarpingPath, f64)> {
    check(a)?;
    check(b)?;
    Ok(path_unchecked(a, b, window))
}

// Two-row rolling DP. Cell (i, j) holds sq(a[i], b[j]) + min(pred), which is
// the same arithmetic as the full table in `path_unchecked`, so both routes
// return bit-identical costs. The recurrence is symmetric under transposition
// and `min` is exact, which makes the result exactly symmetric in (a, b).
pub(crate) fn distance_unchecked(a: &[f64], b: &[f64], window: Window) -> f64 {
    let (n, m) = (a.len(), b.len());
    let radius = window.radius(n, m);
    let mut prev = vec![f64::INFINITY; m];
    let mut curr = vec![f64::INFINITY; m];

    for i in 0..n {
        let (lo, hi) = Window::columns(radius, i, m);
        curr.fill(f64::INFINITY);
        for j in lo..hi {
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let diag = if i > 0 && j > 0 {
                    prev[j - 1]
                } else {
                    f64::INFINITY
                };
                let up = if i > 0 { prev[j] } else { f64::INFINITY };
                let left = if j > 0 { curr[j - 1] } else { f64::INFINITY };
                diag.min(up).min(left)
            };
            curr[j] = sq(a[i], b[j]) + best;
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[m - 1]
}

pub(crate) fn path_unchecked(a: &[f64], b: &[f64], window: Window) -> (WarpingPath, f64) {
    let (n, m) = (a.len(), b.len());
    let radius = window.radius(n, m);
    let mut acc = vec![f64::INFINITY; n * m];
    let at = |i: usize, j: usize| i * m + j;

    for i in 0..n {
        let (lo, hi) = Window::columns(radius, i, m);
        for j in lo..hi {
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let diag = if i > 0 && j > 0 {
                    acc[at(i - 1, j - 1)]
                } else {
                    f64::INFINITY
                };
                let up = if i > 0 {
                    acc[at(i - 1, j)]
                } else {
                    f64::INFINITY
                };
                let left = if j > 0 {
                    acc[at(i, j - 1)]
                } else {
                    f64::INFINITY
                };
                diag.min(up).min(left)
            };
            acc[at(i, j)] = sq(a[i], b[j]) + best;
        }
    }

    // Backtrack. Ties prefer the diagonal, then the A-advance predecessor
    // (i - 1, j), then the B-advance predecessor (i, j - 1).
    let mut steps = Vec::with_capacity(n + m - 1);
    let (mut i, mut j) = (n - 1, m - 1);
    steps.push((i, j));
    while (i, j) != (0, 0) {
        if i == 0 {
            j -= 1;
        } else if j == 0 {
            i -= 1;
        } else {
            let diag = acc[at(i - 1, j - 1)];
            let up = acc[at(i - 1, j)];
            let left = acc[at(i, j - 1)];
            if diag <= up && diag <= left {
                i -= 1;
                j -= 1;
            } else if up <= left {
                i -= 1;
            } else {
                j -= 1;
            }
        }
        steps.push((i, j));
    }
    steps.reverse();
    (WarpingPath { steps }, acc[at(n - 1, m - 1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(dtw_distance(&ts(&[1., 2., 3.]), &ts(&[1., 2., 3.])), 0.0);
        assert_eq!(dtw_distance(&ts(&[0.]), &ts(&[1., 1., 1.])), 3.0);
        assert_eq!(
            dtw_distance(&ts(&[1., 2., 3.]), &ts(&[1., 2., 2., 3.])),
            0.0
        );
        assert_eq!(dtw_distance(&ts(&[0., 0.]), &ts(&[1., 1.])), 2.0);
    }

    #[test]
    fn path_examples() {
        let (p, c) = dtw_path(&ts(&[5.]), &ts(&[5.]));
        assert_eq!(p.steps(), &[(0, 0)]);
        assert_eq!(c, 0.0);

        let (p, c) = dtw_path(&ts(&[1., 2., 3.]), &ts(&[1., 2., 2., 3.]));
        assert_eq!(p.steps(), &[(0, 0), (1, 1), (1, 2), (2, 3)]);
        assert_eq!(c, 0.0);

        let (p, c) = dtw_path(&ts(&[0., 0.]), &ts(&[1., 1.]));
        assert_eq!(p.steps(), &[(0, 0), (1, 1)]);
        assert_eq!(c, 2.0);
    }

    #[test]
    fn slices_reject_bad_input() {
        assert_eq!(
            dtw_distance_slices(&[], &[1.0], Window::Unconstrained),
            Err(Error::EmptySeries)
        );
        assert!(matches!(
            dtw_path_slices(&[1.0], &[0.0, f64::INFINITY], Window::Unconstrained),
            Err(Error::NonFinite { index: 1, .. })
        ));
    }

    #[test]
    fn self_alignment_is_diagonal() {
        let a = ts(&[3., 3., 3., 1., 1.]);
        let (p, c) = dtw_path(&a, &a);
        assert_eq!(c, 0.0);
        assert!(p.steps().iter().all(|&(i, j)| i == j));
        assert_eq!(p.len(), a.len());
    }

    #[test]
    fn band_widens_to_length_difference() {
        let a = ts(&[0.]);
        let b = ts(&[1., 1., 1.]);
        assert_eq!(dtw_distance_windowed(&a, &b, Window::SakoeChiba(0)), 3.0);
        let (p, _) = dtw_path_windowed(&a, &b, Window::SakoeChiba(0));
        assert!(p.is_valid_for(1, 3));
    }

    #[test]
    fn band_zero_is_euclidean_on_equal_lengths() {
        let a = ts(&[0., 5., 0., 0.]);
        let b = ts(&[0., 0., 5., 0.]);
        assert_eq!(dtw_distance_windowed(&a, &b, Window::SakoeChiba(0)), 50.0);
        assert_eq!(dtw_distance_windowed(&a, &b, Window::SakoeChiba(1)), 0.0);
        assert_eq!(dtw_distance(&a, &b), 0.0);
    }

    #[test]
    fn path_validity_checks() {
        let good = WarpingPath {
            steps: vec![(0, 0), (1, 1), (1, 2)],
        };
        assert!(good.is_valid_for(2, 3));
        assert!(!good.is_valid_for(2, 2));
        let jump = WarpingPath {
            steps: vec![(0, 0), (2, 2)],
        };
        assert!(!jump.is_valid_for(3, 3));
        let back = WarpingPath {
            steps: vec![(0, 0), (1, 0), (0, 1), (1, 1)],
        };
        assert!(!back.is_valid_for(2, 2));
    }
}
