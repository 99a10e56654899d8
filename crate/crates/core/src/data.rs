use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Plain labelled feature matrix (one row per sample, binary labels).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Samples {
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<u8>,
}

impl Samples {
    pub fn new(features: Vec<Vec<f64>>, labels: Vec<u8>) -> Result<Self> {
        if features.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: features.len(),
                got: labels.len(),
            });
        }
        if let Some(&bad) = labels.iter().find(|&&y| y > 1) {
            return Err(Error::DegenerateData(format!("non-binary label {bad}")));
        }
        if let Some(first) = features.first() {
            let dim = first.len();
            if let Some(row) = features.iter().find(|r| r.len() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        Ok(Self { features, labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.features.first().map_or(0, Vec::len)
    }

    /// `[negatives, positives]`.
    pub fn class_counts(&self) -> [usize; 2] {
        let pos = self.labels.iter().filter(|&&y| y == 1).count();
        [self.len() - pos, pos]
    }

    pub fn subset(&self, indices: &[usize]) -> Samples {
        Samples {
            features: indices.iter().map(|&i| self.features[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    /// Per-column mean of the features.
    pub fn feature_means(&self) -> Vec<f64> {
        let dim = self.dim();
        let mut means = vec![0.0; dim];
        for row in &self.features {
            for (m, v) in means.iter_mut().zip(row) {
                *m += v;
            }
        }
        let n = self.len().max(1) as f64;
        means.iter_mut().for_each(|m| *m /= n);
        means
    }
}
