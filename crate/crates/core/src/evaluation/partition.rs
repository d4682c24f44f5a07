//! Seeded repeated k-fold partitioning.
//!
//! Each repetition shuffles the instance indices with its own ChaCha8 stream
//! and cuts them into `k` contiguous folds whose sizes differ by at most one.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::MultiLabelDataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fold {
    /// Ascending instance indices.
    pub train: Vec<usize>,
    /// Ascending instance indices.
    pub test: Vec<usize>,
}

/// Seed of repetition `rep`, derived from the base seed.
pub fn repetition_seed(seed: u64, rep: usize) -> u64 {
    seed.wrapping_add((rep as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// `reps` repetitions of `k` folds over `n` instances.
pub fn k_fold_indices(n: usize, k: usize, reps: usize, seed: u64) -> Result<Vec<Vec<Fold>>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 folds, got {k}")));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "{k} folds requested for {n} instances"
        )));
    }
    if reps == 0 {
        return Err(Error::InvalidArgument("need at least one repetition".into()));
    }
    let (base, extra) = (n / k, n % k);
    (0..reps)
        .map(|rep| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(repetition_seed(seed, rep)));
            let mut start = 0;
            let folds = (0..k)
                .map(|f| {
                    let len = base + usize::from(f < extra);
                    let mut test = order[start..start + len].to_vec();
                    test.sort_unstable();
                    let mut in_test = vec![false; n];
                    for &i in &test {
                        in_test[i] = true;
                    }
                    start += len;
                    Fold {
                        train: (0..n).filter(|&i| !in_test[i]).collect(),
                        test,
                    }
                })
                .collect();
            Ok(folds)
        })
        .collect()
}

pub fn k_fold_partition(
    ds: &MultiLabelDataset,
    k: usize,
    reps: usize,
    seed: u64,
) -> Result<Vec<Vec<Fold>>> {
    k_fold_indices(ds.num_instances(), k, reps, seed)
}
