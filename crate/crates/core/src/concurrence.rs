//! SCUMBLE: concurrence among imbalanced labels.
//!
//! Each instance is treated as a population whose individuals are its active
//! labels, valued by their IRLbl. The per-instance score is the Atkinson index
//! of those values with unit inequality aversion,
//!
//! ```text
//! scumble_ins(i) = 1 - geometric_mean(IRLbl of active labels) / arithmetic_mean(...)
//! ```
//!
//! so it is 0 when all active labels are equally frequent (or when there is at
//! most one) and approaches 1 when very rare and very common labels co-occur.
//! The dataset score is the mean over all instances; the per-label score is
//! the mean over the instances containing the label.

use serde::Serialize;

use crate::dataset::{LabelSet, MultiLabelDataset};
use crate::error::{Error, Result};
use crate::imbalance::ImbalanceProfile;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcurrenceProfile {
    pub scumble_ins: Vec<f64>,
    pub scumble: f64,
    /// `None` when there are fewer than two instances or `scumble` is 0.
    pub scumble_cv: Option<f64>,
    /// `None` for labels that never occur.
    pub scumble_lbl: Vec<Option<f64>>,
    /// Restricted to the instances containing each label; `None` when the
    /// label occurs fewer than twice or its `scumble_lbl` is 0.
    pub scumble_lbl_cv: Vec<Option<f64>>,
}

/// Score of one labelset given the dataset's IRLbl vector.
pub fn instance_scumble(labels: &LabelSet, irlbl: &[Option<f64>]) -> f64 {
    if labels.len() <= 1 {
        return 0.0;
    }
    let values: Vec<f64> = labels
        .iter()
        .map(|l| irlbl[l].expect("active labels always have a defined IRLbl"))
        .collect();
    if values.iter().all(|&v| v == values[0]) {
        return 0.0;
    }
    let k = values.len() as f64;
    let arithmetic = values.iter().sum::<f64>() / k;
    let geometric = (values.iter().map(|v| v.ln()).sum::<f64>() / k).exp();
    (1.0 - geometric / arithmetic).clamp(0.0, 1.0)
}

pub fn scumble_ins(ds: &MultiLabelDataset, imbalance: &ImbalanceProfile, index: usize) -> Result<f64> {
    let inst = ds.instances().get(index).ok_or(Error::IndexOutOfRange {
        index,
        len: ds.num_instances(),
    })?;
    Ok(instance_scumble(&inst.labels, &imbalance.irlbl))
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation over the mean; `None` for n < 2 or a zero mean.
fn coefficient_of_variation(values: &[f64]) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    let m = mean(values);
    if m == 0.0 {
        return None;
    }
    let ss: f64 = values.iter().map(|v| (v - m).powi(2)).sum();
    Some((ss / (values.len() - 1) as f64).sqrt() / m)
}

/// Coefficient of variation of per-instance scores. Errors on fewer than two
/// instances; `None` when every score is 0.
pub fn scumble_cv(scumble_ins: &[f64]) -> Result<Option<f64>> {
    if scumble_ins.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "coefficient of variation needs at least 2 instances, got {}",
            scumble_ins.len()
        )));
    }
    Ok(coefficient_of_variation(scumble_ins))
}

impl ConcurrenceProfile {
    pub fn compute(ds: &MultiLabelDataset, imbalance: &ImbalanceProfile) -> Result<Self> {
        if ds.num_instances() == 0 {
            return Err(Error::EmptyDataset);
        }
        let scumble_ins: Vec<f64> = ds
            .labelsets()
            .map(|ls| instance_scumble(ls, &imbalance.irlbl))
            .collect();
        let scumble = mean(&scumble_ins);
        let scumble_cv = coefficient_of_variation(&scumble_ins);

        let mut per_label: Vec<Vec<f64>> = vec![Vec::new(); ds.num_labels()];
        for (ls, &s) in ds.labelsets().zip(&scumble_ins) {
            for l in ls.iter() {
                per_label[l].push(s);
            }
        }
        let scumble_lbl = per_label
            .iter()
            .map(|v| (!v.is_empty()).then(|| mean(v)))
            .collect();
        let scumble_lbl_cv = per_label
            .iter()
            .map(|v| coefficient_of_variation(v))
            .collect();
        Ok(Self {
            scumble_ins,
            scumble,
            scumble_cv,
            scumble_lbl,
            scumble_lbl_cv,
        })
    }

    /// Imbalance and concurrence profiles in one call.
    pub fn analyze(ds: &MultiLabelDataset) -> Result<(ImbalanceProfile, Self)> {
        let imbalance = ImbalanceProfile::compute(ds)?;
        let concurrence = Self::compute(ds, &imbalance)?;
        Ok((imbalance, concurrence))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partner {
    pub label: usize,
    pub name: String,
    pub irlbl: f64,
    /// Instances containing both labels.
    pub shared: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DifficultLabel {
    pub label: usize,
    pub name: String,
    pub scumble_lbl: f64,
    pub irlbl: f64,
    pub partners: Vec<Partner>,
}

/// Minority labels with nonzero SCUMBLELbl, highest first (ties by label
/// order), each with the majority labels it co-occurs with, most shared
/// instances first.
pub fn difficult_labels(
    ds: &MultiLabelDataset,
    imbalance: &ImbalanceProfile,
    concurrence: &ConcurrenceProfile,
    top_k: usize,
) -> Vec<DifficultLabel> {
    let mut candidates: Vec<(usize, f64)> = (0..ds.num_labels())
        .filter(|&l| imbalance.is_minority(l))
        .filter_map(|l| concurrence.scumble_lbl[l].map(|s| (l, s)))
        .filter(|&(_, s)| s > 0.0)
        .collect();
    candidates.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    candidates.truncate(top_k);

    let co = ds.co_occurrence();
    candidates
        .into_iter()
        .map(|(l, s)| {
            let mut partners: Vec<Partner> = (0..ds.num_labels())
                .filter(|&m| m != l && imbalance.is_majority(m) && co.get(l, m) > 0)
                .map(|m| Partner {
                    label: m,
                    name: ds.label_names()[m].clone(),
                    irlbl: imbalance.irlbl[m].expect("majority labels are defined"),
                    shared: co.get(l, m),
                })
                .collect();
            partners.sort_by(|a, b| b.shared.cmp(&a.shared).then(a.label.cmp(&b.label)));
            DifficultLabel {
                label: l,
                name: ds.label_names()[l].clone(),
                scumble_lbl: s,
                irlbl: imbalance.irlbl[l].expect("minority labels are defined"),
                partners,
            }
        })
        .collect()
}
