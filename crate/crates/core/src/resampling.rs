//! Resamplers: REMEDIAL decoupling plus the LP-ROS / LP-RUS label-powerset
//! random over- and undersamplers.
//!
//! All three keep the attribute schema. LP-ROS and LP-RUS draw from a
//! ChaCha8 generator seeded with the caller's seed, so a fixed
//! `(dataset, percentage, seed)` always produces the same output.

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::concurrence::ConcurrenceProfile;
use crate::dataset::{Instance, LabelSet, MultiLabelDataset};
use crate::error::{Error, Result};
use crate::imbalance::ImbalanceProfile;

pub const DEFAULT_PERCENTAGE: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ResampleOutcome {
    pub dataset: MultiLabelDataset,
    /// Instances whose score exceeded the dataset mean (REMEDIAL only).
    pub decoupled_count: usize,
    /// Decoupled instances whose minority or majority side was empty, so no
    /// clone was produced.
    pub dropped_empty_count: usize,
    pub added_count: usize,
    pub removed_count: usize,
    pub seed: u64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResampleSummary {
    pub decoupled: usize,
    pub dropped_empty: usize,
    pub added: usize,
    pub removed: usize,
}

impl ResampleOutcome {
    pub fn summary(&self) -> ResampleSummary {
        ResampleSummary {
            decoupled: self.decoupled_count,
            dropped_empty: self.dropped_empty_count,
            added: self.added_count,
            removed: self.removed_count,
        }
    }

    fn unchanged(ds: &MultiLabelDataset, seed: u64, warning: String) -> Self {
        Self {
            dataset: ds.clone(),
            decoupled_count: 0,
            dropped_empty_count: 0,
            added_count: 0,
            removed_count: 0,
            seed,
            warnings: vec![warning],
        }
    }
}

/// One REMEDIAL pass.
///
/// IRLbl, MeanIR, the per-instance scores and their mean are computed once on
/// the input. Every instance scoring strictly above the mean is split: the
/// original keeps its minority labels (IRLbl > MeanIR) and a clone with the
/// same features, appended after all originals, keeps the majority labels
/// (IRLbl <= MeanIR). Per-label counts are unchanged. Calling it again on the
/// output continues to reduce concurrence.
pub fn remedial(ds: &MultiLabelDataset) -> Result<ResampleOutcome> {
    let imbalance = ImbalanceProfile::compute(ds)?;
    let concurrence = ConcurrenceProfile::compute(ds, &imbalance)?;
    let mut originals = Vec::with_capacity(ds.num_instances());
    let mut clones = Vec::new();
    let mut decoupled = 0;
    let mut dropped = 0;

    for (inst, &score) in ds.instances().iter().zip(&concurrence.scumble_ins) {
        if score <= concurrence.scumble {
            originals.push(inst.clone());
            continue;
        }
        decoupled += 1;
        let minority = inst.labels.filtered(|l| imbalance.is_minority(l));
        let majority = inst.labels.filtered(|l| imbalance.is_majority(l));
        if minority.is_empty() || majority.is_empty() {
            dropped += 1;
            originals.push(inst.clone());
            continue;
        }
        originals.push(Instance {
            features: inst.features.clone(),
            labels: minority,
        });
        clones.push(Instance {
            features: inst.features.clone(),
            labels: majority,
        });
    }

    let added = clones.len();
    originals.extend(clones);
    Ok(ResampleOutcome {
        dataset: ds.with_instances(originals),
        decoupled_count: decoupled,
        dropped_empty_count: dropped,
        added_count: added,
        removed_count: 0,
        seed: 0,
        warnings: Vec::new(),
    })
}

/// Applies [`remedial`] `iterations` times, returning every pass.
pub fn remedial_iterated(ds: &MultiLabelDataset, iterations: usize) -> Result<Vec<ResampleOutcome>> {
    let mut out: Vec<ResampleOutcome> = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let input = out.last().map(|o| &o.dataset).unwrap_or(ds);
        out.push(remedial(input)?);
    }
    Ok(out)
}

struct Bag {
    members: Vec<usize>,
}

/// Labelset bags split by frequency relative to the mean bag size.
fn bags(ds: &MultiLabelDataset) -> (Vec<Bag>, Vec<Bag>, f64) {
    let all: Vec<(LabelSet, Vec<usize>)> = ds.labelset_bags();
    let mean = ds.num_instances() as f64 / all.len().max(1) as f64;
    let mut minority = Vec::new();
    let mut majority = Vec::new();
    for (_, members) in all {
        let size = members.len() as f64;
        if size < mean {
            minority.push(Bag { members });
        } else if size > mean {
            majority.push(Bag { members });
        }
    }
    // Rarest first for oversampling, most frequent first for undersampling;
    // the stable sort keeps first-appearance order among equal sizes.
    minority.sort_by_key(|b| b.members.len());
    majority.sort_by_key(|b| std::cmp::Reverse(b.members.len()));
    (minority, majority, mean)
}

/// Accepted percentages: (0, 100] when `max_inclusive` (LP-ROS), else (0, 100).
pub fn check_percentage(p: f64, max_inclusive: bool) -> Result<()> {
    let ok = p > 0.0 && if max_inclusive { p <= 100.0 } else { p < 100.0 };
    if !p.is_finite() || !ok {
        let upper = if max_inclusive { "<= 100" } else { "< 100" };
        return Err(Error::InvalidArgument(format!(
            "percentage must be > 0 and {upper}, got {p}"
        )));
    }
    Ok(())
}

fn target(ds: &MultiLabelDataset, p: f64) -> usize {
    (ds.num_instances() as f64 * p / 100.0).floor() as usize
}

/// LP-ROS: clones `floor(|D| * p / 100)` instances drawn from labelsets whose
/// frequency is below the mean labelset frequency.
///
/// Clones are allotted one at a time round-robin over the minority bags,
/// rarest first, so bags receive equal shares and the remainder goes to the
/// rarest ones. Within a bag, the instance to clone is drawn uniformly.
/// Clones are appended after the original instances.
pub fn lp_ros(ds: &MultiLabelDataset, percentage: f64, seed: u64) -> Result<ResampleOutcome> {
    check_percentage(percentage, true)?;
    let (minority, _, _) = bags(ds);
    if minority.is_empty() {
        return Ok(ResampleOutcome::unchanged(
            ds,
            seed,
            "no minority labelsets; dataset left unchanged".into(),
        ));
    }
    let total = target(ds, percentage);
    let mut quota = vec![total / minority.len(); minority.len()];
    for q in quota.iter_mut().take(total % minority.len()) {
        *q += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = ds.instances().to_vec();
    for (bag, &q) in minority.iter().zip(&quota) {
        for _ in 0..q {
            let pick = bag.members[rng.random_range(0..bag.members.len())];
            instances.push(ds.instances()[pick].clone());
        }
    }
    Ok(ResampleOutcome {
        dataset: ds.with_instances(instances),
        decoupled_count: 0,
        dropped_empty_count: 0,
        added_count: total,
        removed_count: 0,
        seed,
        warnings: Vec::new(),
    })
}

/// LP-RUS: removes up to `floor(|D| * p / 100)` instances from labelsets whose
/// frequency exceeds the mean labelset frequency, never taking a labelset
/// below that mean.
///
/// Removals are allotted one at a time round-robin over the majority bags,
/// most frequent first, skipping bags that reached the floor. Which members
/// of a bag go is decided by a seeded shuffle. Survivors keep their order.
pub fn lp_rus(ds: &MultiLabelDataset, percentage: f64, seed: u64) -> Result<ResampleOutcome> {
    check_percentage(percentage, false)?;
    let (_, majority, mean) = bags(ds);
    if majority.is_empty() {
        return Ok(ResampleOutcome::unchanged(
            ds,
            seed,
            "no majority labelsets; dataset left unchanged".into(),
        ));
    }
    let floor = mean.ceil() as usize;
    let capacity: Vec<usize> = majority
        .iter()
        .map(|b| b.members.len().saturating_sub(floor))
        .collect();
    let total = target(ds, percentage);
    let mut quota = vec![0usize; majority.len()];
    let mut assigned = 0;
    while assigned < total {
        let mut progressed = false;
        for (q, &cap) in quota.iter_mut().zip(&capacity) {
            if assigned == total {
                break;
            }
            if *q < cap {
                *q += 1;
                assigned += 1;
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut remove = vec![false; ds.num_instances()];
    for (bag, &q) in majority.iter().zip(&quota) {
        let mut members = bag.members.clone();
        members.shuffle(&mut rng);
        for &i in &members[..q] {
            remove[i] = true;
        }
    }
    let instances = ds
        .instances()
        .iter()
        .zip(&remove)
        .filter(|(_, &r)| !r)
        .map(|(inst, _)| inst.clone())
        .collect();
    let mut warnings = Vec::new();
    if assigned < total {
        warnings.push(format!(
            "only {assigned} of {total} requested removals possible without going below the mean labelset frequency"
        ));
    }
    Ok(ResampleOutcome {
        dataset: ds.with_instances(instances),
        decoupled_count: 0,
        dropped_empty_count: 0,
        added_count: 0,
        removed_count: assigned,
        seed,
        warnings,
    })
}
