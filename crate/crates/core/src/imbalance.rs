//! Label imbalance measures.
//!
//! `IRLbl(y)` is the count of the most frequent label divided by the count of
//! `y`, so the most frequent labels score 1 and rarer labels score higher.
//! Labels that never appear have no defined ratio; they are reported as `None`
//! and left out of MeanIR and MaxIR.

use serde::Serialize;

use crate::dataset::MultiLabelDataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImbalanceProfile {
    pub label_counts: Vec<usize>,
    pub irlbl: Vec<Option<f64>>,
    pub mean_ir: f64,
    pub max_ir: f64,
    pub card: f64,
    pub dens: f64,
}

impl ImbalanceProfile {
    pub fn compute(ds: &MultiLabelDataset) -> Result<Self> {
        let (card, dens) = (cardinality(ds)?, density(ds)?);
        let label_counts = ds.label_counts();
        let irlbl = irlbl_from_counts(&label_counts)?;
        let (mean_ir, max_ir) = aggregate(&irlbl);
        Ok(Self {
            label_counts,
            irlbl,
            mean_ir,
            max_ir,
            card,
            dens,
        })
    }

    /// Minority labels have a defined IRLbl strictly above MeanIR.
    pub fn is_minority(&self, label: usize) -> bool {
        self.irlbl[label].is_some_and(|ir| ir > self.mean_ir)
    }

    pub fn is_majority(&self, label: usize) -> bool {
        self.irlbl[label].is_some_and(|ir| ir <= self.mean_ir)
    }

    /// Labels whose IRLbl is undefined because they never occur.
    pub fn absent_labels(&self) -> Vec<usize> {
        (0..self.irlbl.len())
            .filter(|&l| self.irlbl[l].is_none())
            .collect()
    }
}

fn irlbl_from_counts(counts: &[usize]) -> Result<Vec<Option<f64>>> {
    let max = counts.iter().copied().max().unwrap_or(0);
    if max == 0 {
        return Err(Error::NoActiveLabels);
    }
    Ok(counts
        .iter()
        .map(|&c| (c > 0).then(|| max as f64 / c as f64))
        .collect())
}

fn aggregate(irlbl: &[Option<f64>]) -> (f64, f64) {
    let defined: Vec<f64> = irlbl.iter().flatten().copied().collect();
    let mean = defined.iter().sum::<f64>() / defined.len() as f64;
    let max = defined.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (mean, max)
}

pub fn irlbl(ds: &MultiLabelDataset) -> Result<Vec<Option<f64>>> {
    irlbl_from_counts(&ds.label_counts())
}

pub fn mean_ir(ds: &MultiLabelDataset) -> Result<f64> {
    Ok(aggregate(&irlbl(ds)?).0)
}

pub fn max_ir(ds: &MultiLabelDataset) -> Result<f64> {
    Ok(aggregate(&irlbl(ds)?).1)
}

/// Average number of active labels per instance.
pub fn cardinality(ds: &MultiLabelDataset) -> Result<f64> {
    if ds.num_instances() == 0 {
        return Err(Error::EmptyDataset);
    }
    Ok(ds.label_assignments() as f64 / ds.num_instances() as f64)
}

pub fn density(ds: &MultiLabelDataset) -> Result<f64> {
    Ok(cardinality(ds)? / ds.num_labels() as f64)
}
