//! One-nearest-neighbour predictor used to exercise the evaluation pipeline.
//!
//! Numeric features are used as-is, nominal features are one-hot encoded,
//! missing values become 0 and string attributes are ignored. Each test
//! instance receives the labelset of its closest training instance (Euclidean
//! distance, lowest index on ties) as 0/1 scores with threshold 0.5.

use crate::dataset::{AttributeKind, Instance, MultiLabelDataset, Value};
use crate::error::{Error, Result};
use crate::evaluation::metrics::PredictionSet;

fn encode(ds: &MultiLabelDataset, inst: &Instance) -> Vec<f64> {
    let mut out = Vec::new();
    for (attr, value) in ds.feature_attributes().zip(&inst.features) {
        match &attr.kind {
            AttributeKind::Numeric => out.push(match value {
                Value::Numeric(x) => *x,
                _ => 0.0,
            }),
            AttributeKind::Nominal(domain) => {
                let start = out.len();
                out.resize(start + domain.len(), 0.0);
                if let Value::Nominal(v) = value {
                    out[start + v] = 1.0;
                }
            }
            AttributeKind::String => {}
        }
    }
    out
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn baseline_predict(train: &MultiLabelDataset, test: &MultiLabelDataset) -> Result<PredictionSet> {
    if train.num_instances() == 0 {
        return Err(Error::EmptyDataset);
    }
    if train.schema() != test.schema() {
        return Err(Error::DimensionMismatch(
            "train and test schemas differ".into(),
        ));
    }
    let train_x: Vec<Vec<f64>> = train.instances().iter().map(|i| encode(train, i)).collect();
    let n_labels = train.num_labels();
    let rows: Vec<Vec<f64>> = test
        .instances()
        .iter()
        .map(|inst| {
            let x = encode(test, inst);
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (j, t) in train_x.iter().enumerate() {
                let d = squared_distance(&x, t);
                if d < best_d {
                    best = j;
                    best_d = d;
                }
            }
            let labels = &train.instances()[best].labels;
            (0..n_labels)
                .map(|l| if labels.contains(l) { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    PredictionSet::from_scores(&rows, n_labels, 0.5)
}
