use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::frame::FeatureFrame;
use super::nearmiss::nearmiss_select;
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Train/test sampling plan. Ratios are majority (not-backorder) rows per
/// minority (backorder) row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SamplingConfig {
    pub nearmiss_k: usize,
    pub train_majority_ratio: f64,
    pub test_majority_ratio: f64,
    pub train_size: usize,
    pub test_size: usize,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self {
            nearmiss_k: 3,
            train_majority_ratio: 1.0,
            test_majority_ratio: 3.0,
            train_size: 1000,
            test_size: 267,
            seed: 42,
        }
    }
}

impl SamplingConfig {
    fn minority_share(size: usize, ratio: f64) -> usize {
        (size as f64 / (ratio + 1.0)).round() as usize
    }

    /// `(negatives, positives)` of the training split.
    pub fn train_counts(&self) -> (usize, usize) {
        let pos = Self::minority_share(self.train_size, self.train_majority_ratio);
        (self.train_size - pos, pos)
    }

    /// `(negatives, positives)` of the test split; 200/67 for the defaults.
    pub fn test_counts(&self) -> (usize, usize) {
        let pos = Self::minority_share(self.test_size, self.test_majority_ratio);
        (self.test_size - pos, pos)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, r) in [
            ("train_majority_ratio", self.train_majority_ratio),
            ("test_majority_ratio", self.test_majority_ratio),
        ] {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive, got {r}")));
            }
        }
        if self.nearmiss_k == 0 {
            return Err(Error::Config("nearmiss_k must be at least 1".into()));
        }
        let (tn, tp) = self.train_counts();
        let (sn, sp) = self.test_counts();
        if [tn, tp, sn, sp].contains(&0) {
            return Err(Error::Config("every split needs both classes".into()));
        }
        Ok(())
    }
}

/// Disjoint, seed-deterministic train/test frames.
///
/// Backorder rows are shuffled and dealt to test then train; non-backorder
/// rows are shuffled and partitioned into test and train pools in the same
/// proportion. Each pool is then NearMiss-undersampled to the configured
/// count. Both outputs keep source row order.
pub fn build_splits(
    frame: &FeatureFrame,
    config: &SamplingConfig,
    exec: Execution,
) -> Result<(FeatureFrame, FeatureFrame)> {
    config.validate()?;
    let (train_neg, train_pos) = config.train_counts();
    let (test_neg, test_pos) = config.test_counts();

    let mut pos: Vec<usize> = (0..frame.n_rows()).filter(|&i| frame.labels[i] == 1).collect();
    let mut neg: Vec<usize> = (0..frame.n_rows()).filter(|&i| frame.labels[i] == 0).collect();
    if pos.len() < train_pos + test_pos {
        return Err(Error::InsufficientSamples(format!(
            "need {} backorder rows, found {}",
            train_pos + test_pos,
            pos.len()
        )));
    }
    if neg.len() < train_neg + test_neg {
        return Err(Error::InsufficientSamples(format!(
            "need {} non-backorder rows, found {}",
            train_neg + test_neg,
            neg.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    pos.shuffle(&mut rng);
    neg.shuffle(&mut rng);

    let share = test_pos as f64 / (test_pos + train_pos) as f64;
    let test_pool = ((neg.len() as f64 * share).round() as usize).clamp(test_neg, neg.len() - train_neg);

    let mut test_idx: Vec<usize> = pos[..test_pos].iter().chain(&neg[..test_pool]).copied().collect();
    let mut train_idx: Vec<usize> = pos[test_pos..test_pos + train_pos]
        .iter()
        .chain(&neg[test_pool..])
        .copied()
        .collect();
    test_idx.sort_unstable();
    train_idx.sort_unstable();

    let train = nearmiss_select(&frame.select_rows(&train_idx), 0, train_neg, config.nearmiss_k, exec)?;
    let test = nearmiss_select(&frame.select_rows(&test_idx), 0, test_neg, config.nearmiss_k, exec)?;
    Ok((train, test))
}
