use serde::{Deserialize, Serialize};

use super::special::student_t_two_sided_p;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatTestResult {
    #[serde(rename = "t")]
    pub t_statistic: f64,
    /// Two-sided.
    #[serde(rename = "p")]
    pub p_value: f64,
    #[serde(rename = "dof")]
    pub degrees_of_freedom: usize,
    #[serde(rename = "fold_scores")]
    pub per_fold_scores: [Vec<f64>; 2],
}

/// Paired t-test on per-fold scores: `t = mean(d) / (sd(d)/√n)` with
/// `d = a − b` and the `n − 1` sample standard deviation.
pub fn paired_ttest(scores_a: &[f64], scores_b: &[f64]) -> Result<StatTestResult> {
    if scores_a.len() != scores_b.len() {
        return Err(Error::DimensionMismatch {
            expected: scores_a.len(),
            got: scores_b.len(),
        });
    }
    let n = scores_a.len();
    if n < 2 {
        return Err(Error::InsufficientSamples(format!(
            "paired t-test needs at least 2 folds, got {n}"
        )));
    }
    let d: Vec<f64> = scores_a.iter().zip(scores_b).map(|(a, b)| a - b).collect();
    if let Some(&bad) = d.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("score difference {bad}")));
    }
    let mean = d.iter().sum::<f64>() / n as f64;
    let var = d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let sd = var.sqrt();
    let scale = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if sd <= 1e-12 * scale || sd == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let t = mean / (sd / (n as f64).sqrt());
    let dof = n - 1;
    Ok(StatTestResult {
        t_statistic: t,
        p_value: student_t_two_sided_p(t, dof as f64),
        degrees_of_freedom: dof,
        per_fold_scores: [scores_a.to_vec(), scores_b.to_vec()],
    })
}
