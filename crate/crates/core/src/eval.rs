//! 1-NN DTW classification and posterior-averaging ensembles.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::series::{Label, TimeSeries};
use crate::warping::{distance_unchecked, Window};

const ROW_SUM_TOL: f64 = 1e-9;

/// Label of the DTW-nearest training series; ties go to the smaller index.
pub fn classify_1nn<'a>(train: &'a LabeledDataset, query: &TimeSeries) -> Result<&'a Label> {
    classify_1nn_windowed(train, query, Window::Unconstrained)
}

pub fn classify_1nn_windowed<'a>(
    train: &'a LabeledDataset,
    query: &TimeSeries,
    window: Window,
) -> Result<&'a Label> {
    nearest(train, query, window).map(|(i, _)| &train.instances()[i].label)
}

/// Index and distance of the nearest training series.
pub fn nearest(train: &LabeledDataset, query: &TimeSeries, window: Window) -> Result<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, inst) in train.instances().iter().enumerate() {
        let d = distance_unchecked(&inst.series, query, window);
        if best.is_none_or(|(_, b)| d < b) {
            best = Some((i, d));
        }
    }
    best.ok_or(Error::EmptyDataset)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub accuracy: f64,
    pub correct: usize,
    pub predictions: Vec<Label>,
}

/// 1-NN DTW accuracy of `train` on `test`; predictions are in test order.
pub fn evaluate(train: &LabeledDataset, test: &LabeledDataset) -> Result<Evaluation> {
    evaluate_windowed(train, test, Window::Unconstrained)
}

pub fn evaluate_windowed(
    train: &LabeledDataset,
    test: &LabeledDataset,
    window: Window,
) -> Result<Evaluation> {
    if train.is_empty() || test.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let predictions: Vec<Label> = test
        .instances()
        .par_iter()
        .map(|inst| classify_1nn_windowed(train, &inst.series, window).cloned())
        .collect::<Result<_>>()?;
    let correct = predictions
        .iter()
        .zip(test.labels())
        .filter(|(p, t)| p == t)
        .count();
    Ok(Evaluation {
        accuracy: correct as f64 / test.len() as f64,
        correct,
        predictions,
    })
}

/// Fraction of positions where `predictions` and `truth` agree.
pub fn accuracy(predictions: &[Label], truth: &[Label]) -> Result<f64> {
    if predictions.len() != truth.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} predictions for {} truth labels",
            predictions.len(),
            truth.len()
        )));
    }
    if truth.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let hits = predictions
        .iter()
        .zip(truth)
        .filter(|(p, t)| p == t)
        .count();
    Ok(hits as f64 / truth.len() as f64)
}

/// Per-instance class posteriors, columns ordered by `class_order`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMatrix {
    class_order: Vec<Label>,
    rows: Vec<Vec<f64>>,
}

impl ProbabilityMatrix {
    pub fn new(class_order: Vec<Label>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if class_order.is_empty() {
            return Err(Error::InvalidProbabilities("no classes".into()));
        }
        for (k, l) in class_order.iter().enumerate() {
            if class_order[..k].contains(l) {
                return Err(Error::InvalidProbabilities(format!(
                    "duplicate class `{l}`"
                )));
            }
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != class_order.len() {
                return Err(Error::InvalidProbabilities(format!(
                    "row {r} has {} entries for {} classes",
                    row.len(),
                    class_order.len()
                )));
            }
            if let Some(v) = row.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                return Err(Error::InvalidProbabilities(format!(
                    "row {r} has entry {v} outside [0, 1]"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::InvalidProbabilities(format!(
                    "row {r} sums to {sum}"
                )));
            }
        }
        Ok(Self { class_order, rows })
    }

    pub fn class_order(&self) -> &[Label] {
        &self.class_order
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Per-row argmax; ties go to the earlier column.
    pub fn argmax_labels(&self) -> Vec<Label> {
        self.rows
            .iter()
            .map(|row| {
                let mut best = 0;
                for (c, v) in row.iter().enumerate().skip(1) {
                    if *v > row[best] {
                        best = c;
                    }
                }
                self.class_order[best].clone()
            })
            .collect()
    }

    /// Parses the comma-separated form: a header of class labels, then one
    /// row of probabilities per instance. Blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .split('\n')
            .enumerate()
            .map(|(n, l)| (n + 1, l.strip_suffix('\r').unwrap_or(l)))
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "missing class header".into(),
        })?;
        let class_order: Vec<Label> = header.split(',').map(|t| Label::new(t.trim())).collect();

        let mut rows = Vec::new();
        for (line, content) in lines {
            let row = content
                .split(',')
                .enumerate()
                .map(|(c, tok)| {
                    let tok = tok.trim();
                    tok.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| Error::Parse {
                            line,
                            column: c + 1,
                            message: format!("`{tok}` is not a finite number"),
                        })
                })
                .collect::<Result<Vec<f64>>>()?;
            if row.len() != class_order.len() {
                return Err(Error::Parse {
                    line,
                    column: row.len().min(class_order.len()) + 1,
                    message: format!(
                        "expected {} probabilities, found {}",
                        class_order.len(),
                        row.len()
                    ),
                });
            }
            rows.push(row);
        }
        Self::new(class_order, rows)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.class_order.iter().map(Label::as_str).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        out
    }
}

/// Element-wise mean of two posterior matrices and its per-row argmax.
pub fn average_posteriors(
    a: &ProbabilityMatrix,
    b: &ProbabilityMatrix,
) -> Result<(ProbabilityMatrix, Vec<Label>)> {
    if a.class_order != b.class_order {
        return Err(Error::ShapeMismatch("class orders differ".into()));
    }
    if a.rows.len() != b.rows.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} rows vs {} rows",
            a.rows.len(),
            b.rows.len()
        )));
    }
    let rows = a
        .rows
        .iter()
        .zip(&b.rows)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p + q) / 2.0).collect())
        .collect();
    let avg = ProbabilityMatrix {
        class_order: a.class_order.clone(),
        rows,
    };
    let labels = avg.argmax_labels();
    Ok((avg, labels))
}

/// Hard predictions as degenerate posteriors.
pub fn one_hot_posteriors(
    predictions: &[Label],
    class_order: &[Label],
) -> Result<ProbabilityMatrix> {
    let rows = predictions
        .iter()
        .map(|p| {
            let col = class_order
                .iter()
                .position(|l| l == p)
                .ok_or_else(|| Error::UnknownLabel(p.to_string()))?;
            let mut row = vec![0.0; class_order.len()];
            row[col] = 1.0;
            Ok(row)
        })
        .collect::<Result<_>>()?;
    ProbabilityMatrix::new(class_order.to_vec(), rows)
}
