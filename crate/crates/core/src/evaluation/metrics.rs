//! Multilabel evaluation measures.
//!
//! Example-based: Hamming loss, precision, recall, F-measure. Label-based:
//! macro-averaged F-measure. Ranking-based: one-error, ranking loss.

use serde::Serialize;

use crate::dataset::MultiLabelDataset;
use crate::error::{Error, Result};

/// Row-major boolean matrix: instances by labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMatrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl LabelMatrix {
    pub fn from_dataset(ds: &MultiLabelDataset) -> Self {
        let cols = ds.num_labels();
        let mut data = vec![false; ds.num_instances() * cols];
        for (i, ls) in ds.labelsets().enumerate() {
            for l in ls.iter() {
                data[i * cols + l] = true;
            }
        }
        Self {
            rows: ds.num_instances(),
            cols,
            data,
        }
    }

    pub fn from_rows(rows: &[Vec<bool>], cols: usize) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} columns, expected {cols}",
                r.len()
            )));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, l: usize) -> bool {
        self.data[i * self.cols + l]
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn complement(&self) -> Self {
        Self {
            data: self.data.iter().map(|b| !b).collect(),
            ..self.clone()
        }
    }
}

/// Confidence scores with the label decisions derived from (or supplied
/// alongside) them.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionSet {
    scores: Vec<f64>,
    decisions: LabelMatrix,
    threshold: Option<f64>,
}

impl PredictionSet {
    /// Decisions are `score >= threshold`.
    pub fn from_scores(rows: &[Vec<f64>], cols: usize, threshold: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(Error::InvalidArgument(format!(
                "threshold must be within [0, 1], got {threshold}"
            )));
        }
        let scores = check_scores(rows, cols)?;
        let data = scores.iter().map(|&s| s >= threshold).collect();
        Ok(Self {
            scores,
            decisions: LabelMatrix {
                rows: rows.len(),
                cols,
                data,
            },
            threshold: Some(threshold),
        })
    }

    /// Scores plus externally chosen decisions.
    pub fn with_decisions(rows: &[Vec<f64>], decisions: LabelMatrix) -> Result<Self> {
        let scores = check_scores(rows, decisions.cols)?;
        if rows.len() != decisions.rows {
            return Err(Error::DimensionMismatch(format!(
                "{} score rows but {} decision rows",
                rows.len(),
                decisions.rows
            )));
        }
        Ok(Self {
            scores,
            decisions,
            threshold: None,
        })
    }

    pub fn rows(&self) -> usize {
        self.decisions.rows
    }

    pub fn cols(&self) -> usize {
        self.decisions.cols
    }

    pub fn threshold(&self) -> Option<f64> {
        self.threshold
    }

    pub fn decisions(&self) -> &LabelMatrix {
        &self.decisions
    }

    pub fn score(&self, i: usize, l: usize) -> f64 {
        self.scores[i * self.cols() + l]
    }

    pub fn score_row(&self, i: usize) -> &[f64] {
        &self.scores[i * self.cols()..(i + 1) * self.cols()]
    }
}

fn check_scores(rows: &[Vec<f64>], cols: usize) -> Result<Vec<f64>> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(Error::DimensionMismatch(format!(
                "score row {i} has {} values, expected {cols}",
                r.len()
            )));
        }
        if let Some(s) = r.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::InvalidArgument(format!(
                "score {s} in row {i} is outside [0, 1]"
            )));
        }
    }
    Ok(rows.concat())
}

/// Treatment of instances whose denominator is empty (|Z_i| = 0 for
/// precision, |Y_i| = 0 for recall).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmptyPolicy {
    /// Leave the instance out of the mean.
    #[default]
    Skip,
    /// Count the instance with a score of 0.
    Zero,
}

/// Treatment of labels with no positives and no predictions in MacroFM.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MacroMode {
    /// Such a label scores F = 0.
    #[default]
    ZeroUndefined,
    /// Such a label is left out of the average.
    SkipUndefined,
}

/// How a relevant and an irrelevant label with equal scores count in ranking loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieMode {
    /// A tie counts as half an inversion.
    #[default]
    Half,
    /// Only strict inversions count.
    Strict,
}

fn check_dims(truth: &LabelMatrix, pred: &PredictionSet) -> Result<()> {
    if truth.rows != pred.rows() || truth.cols != pred.cols() {
        return Err(Error::DimensionMismatch(format!(
            "truth is {}x{} but predictions are {}x{}",
            truth.rows,
            truth.cols,
            pred.rows(),
            pred.cols()
        )));
    }
    if truth.rows == 0 {
        return Err(Error::EmptyDataset);
    }
    Ok(())
}

pub fn hamming_loss(truth: &LabelMatrix, pred: &PredictionSet) -> Result<f64> {
    check_dims(truth, pred)?;
    let z = &pred.decisions;
    let diff = truth.data.iter().zip(&z.data).filter(|(a, b)| a != b).count();
    Ok(diff as f64 / (truth.rows * truth.cols) as f64)
}

fn example_mean(
    truth: &LabelMatrix,
    pred: &PredictionSet,
    policy: EmptyPolicy,
    denominator: impl Fn(&[bool], &[bool]) -> usize,
) -> Result<Option<f64>> {
    check_dims(truth, pred)?;
    let mut sum = 0.0;
    let mut n = 0usize;
    for i in 0..truth.rows {
        let (y, z) = (truth.row(i), pred.decisions.row(i));
        let both = y.iter().zip(z).filter(|(a, b)| **a && **b).count();
        let d = denominator(y, z);
        if d == 0 {
            if policy == EmptyPolicy::Zero {
                n += 1;
            }
            continue;
        }
        sum += both as f64 / d as f64;
        n += 1;
    }
    Ok((n > 0).then(|| sum / n as f64))
}

fn count(row: &[bool]) -> usize {
    row.iter().filter(|b| **b).count()
}

/// Mean of |Y ∩ Z| / |Z|; `None` when no instance has a prediction.
pub fn precision(truth: &LabelMatrix, pred: &PredictionSet, policy: EmptyPolicy) -> Result<Option<f64>> {
    example_mean(truth, pred, policy, |_, z| count(z))
}

/// Mean of |Y ∩ Z| / |Y|; `None` when no instance has a relevant label.
pub fn recall(truth: &LabelMatrix, pred: &PredictionSet, policy: EmptyPolicy) -> Result<Option<f64>> {
    example_mean(truth, pred, policy, |y, _| count(y))
}

/// Harmonic mean of example-based precision and recall; 0 when both are 0.
pub fn f_measure(truth: &LabelMatrix, pred: &PredictionSet, policy: EmptyPolicy) -> Result<Option<f64>> {
    let p = precision(truth, pred, policy)?;
    let r = recall(truth, pred, policy)?;
    Ok(match (p, r) {
        (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
        (Some(_), Some(_)) => Some(0.0),
        _ => None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ConfusionCounts {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
}

impl ConfusionCounts {
    /// `2tp / (2tp + fp + fn)`, or `None` when the denominator is 0.
    pub fn f_measure(&self) -> Option<f64> {
        let denom = 2 * self.tp + self.fp + self.fn_;
        (denom > 0).then(|| 2.0 * self.tp as f64 / denom as f64)
    }
}

pub fn confusion(truth: &LabelMatrix, pred: &PredictionSet) -> Result<Vec<ConfusionCounts>> {
    check_dims(truth, pred)?;
    let mut out = vec![ConfusionCounts::default(); truth.cols];
    for i in 0..truth.rows {
        for (l, c) in out.iter_mut().enumerate() {
            match (truth.get(i, l), pred.decisions.get(i, l)) {
                (true, true) => c.tp += 1,
                (false, true) => c.fp += 1,
                (false, false) => c.tn += 1,
                (true, false) => c.fn_ += 1,
            }
        }
    }
    Ok(out)
}

pub fn macro_fm(truth: &LabelMatrix, pred: &PredictionSet, mode: MacroMode) -> Result<f64> {
    let per_label = confusion(truth, pred)?;
    let values: Vec<f64> = per_label
        .iter()
        .filter_map(|c| match (c.f_measure(), mode) {
            (Some(f), _) => Some(f),
            (None, MacroMode::ZeroUndefined) => Some(0.0),
            (None, MacroMode::SkipUndefined) => None,
        })
        .collect();
    if values.is_empty() {
        return Ok(0.0);
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// Index of the highest score, lowest index on ties.
fn top_label(scores: &[f64]) -> usize {
    let mut best = 0;
    for (l, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = l;
        }
    }
    best
}

/// Fraction of instances whose top-scored label is not relevant. Instances
/// without relevant labels always count as errors.
pub fn one_error(truth: &LabelMatrix, pred: &PredictionSet) -> Result<f64> {
    check_dims(truth, pred)?;
    if truth.cols == 0 {
        return Err(Error::DimensionMismatch("no label scores".into()));
    }
    let errors = (0..truth.rows)
        .filter(|&i| !truth.get(i, top_label(pred.score_row(i))))
        .count();
    Ok(errors as f64 / truth.rows as f64)
}

/// Mean fraction of (relevant, irrelevant) label pairs ranked in the wrong
/// order. Instances with no relevant or no irrelevant label are skipped;
/// `None` if all are.
pub fn ranking_loss(truth: &LabelMatrix, pred: &PredictionSet, ties: TieMode) -> Result<Option<f64>> {
    check_dims(truth, pred)?;
    let mut sum = 0.0;
    let mut n = 0usize;
    for i in 0..truth.rows {
        let y = truth.row(i);
        let s = pred.score_row(i);
        let relevant: Vec<f64> = (0..truth.cols).filter(|&l| y[l]).map(|l| s[l]).collect();
        let irrelevant: Vec<f64> = (0..truth.cols).filter(|&l| !y[l]).map(|l| s[l]).collect();
        let pairs = relevant.len() * irrelevant.len();
        if pairs == 0 {
            continue;
        }
        let mut bad = 0.0;
        for &a in &relevant {
            for &b in &irrelevant {
                if a < b {
                    bad += 1.0;
                } else if a == b && ties == TieMode::Half {
                    bad += 0.5;
                }
            }
        }
        sum += bad / pairs as f64;
        n += 1;
    }
    Ok((n > 0).then(|| sum / n as f64))
}

/// The seven measures with default policies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricReport {
    pub hamming_loss: f64,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f_measure: Option<f64>,
    pub macro_fm: f64,
    pub one_error: f64,
    pub ranking_loss: Option<f64>,
}

pub fn evaluate(truth: &LabelMatrix, pred: &PredictionSet) -> Result<MetricReport> {
    let policy = EmptyPolicy::default();
    Ok(MetricReport {
        hamming_loss: hamming_loss(truth, pred)?,
        precision: precision(truth, pred, policy)?,
        recall: recall(truth, pred, policy)?,
        f_measure: f_measure(truth, pred, policy)?,
        macro_fm: macro_fm(truth, pred, MacroMode::default())?,
        one_error: one_error(truth, pred)?,
        ranking_loss: ranking_loss(truth, pred, TieMode::default())?,
    })
}
