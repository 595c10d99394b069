//! Brute-force reference implementations used only by tests.
//!
//! Nothing here calls into the library's DTW or DBA code.

#![allow(dead_code)]

/// Every monotone, contiguous path from (0, 0) to (n-1, m-1), built backwards
/// from the end with predecessors tried in the order diagonal, A-advance,
/// B-advance. Paths are returned forward (starting at (0, 0)).
pub fn all_paths(n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    fn walk(
        i: usize,
        j: usize,
        tail: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        tail.push((i, j));
        if i == 0 && j == 0 {
            out.push(tail.iter().rev().copied().collect());
        } else {
            if i > 0 && j > 0 {
                walk(i - 1, j - 1, tail, out);
            }
            if i > 0 {
                walk(i - 1, j, tail, out);
            }
            if j > 0 {
                walk(i, j - 1, tail, out);
            }
        }
        tail.pop();
    }
    let mut out = Vec::new();
    walk(n - 1, m - 1, &mut Vec::new(), &mut out);
    out
}

pub fn path_cost(a: &[f64], b: &[f64], path: &[(usize, usize)]) -> f64 {
    path.iter().map(|&(i, j)| (a[i] - b[j]).powi(2)).sum()
}

/// Minimum path cost by exhaustive enumeration.
pub fn brute_dtw(a: &[f64], b: &[f64]) -> f64 {
    all_paths(a.len(), b.len())
        .iter()
        .map(|p| path_cost(a, b, p))
        .fold(f64::INFINITY, f64::min)
}

/// Optimal path under the diagonal-first tie-break: among all paths whose
/// cost equals the minimum (within `tie_tol`), the one whose backward step
/// sequence is lexicographically smallest with diagonal < A-advance < B-advance.
/// Enumeration order already yields that ordering, so the first hit wins.
pub fn brute_path(a: &[f64], b: &[f64], tie_tol: f64) -> (Vec<(usize, usize)>, f64) {
    let paths = all_paths(a.len(), b.len());
    let costs: Vec<f64> = paths.iter().map(|p| path_cost(a, b, p)).collect();
    let best = costs.iter().copied().fold(f64::INFINITY, f64::min);
    let idx = costs.iter().position(|&c| c <= best + tie_tol).unwrap();
    (paths[idx].clone(), costs[idx])
}

/// One weighted DBA update computed from brute-force alignments of the
/// average (as A) against each member (as B).
pub fn dba_step(avg: &[f64], members: &[Vec<f64>], weights: &[f64]) -> Vec<f64> {
    let mut num = vec![0.0; avg.len()];
    let mut den = vec![0.0; avg.len()];
    for (member, &w) in members.iter().zip(weights) {
        let (path, _) = brute_path(avg, member, 1e-12);
        for (t, j) in path {
            num[t] += w * member[j];
            den[t] += w;
        }
    }
    num.iter()
        .zip(&den)
        .zip(avg)
        .map(|((n, d), prev)| if *d > 0.0 { n / d } else { *prev })
        .collect()
}

/// Weighted DBA objective with brute-force distances.
pub fn objective(avg: &[f64], members: &[Vec<f64>], weights: &[f64]) -> f64 {
    members
        .iter()
        .zip(weights)
        .map(|(m, w)| w * brute_dtw(m, avg))
        .sum()
}
