use serde::{Deserialize, Serialize};

use super::frame::FeatureFrame;
use crate::error::{Error, Result};

/// `sign(x)·ln(1 + |x|)`.
pub fn signed_log(x: f64) -> f64 {
    x.signum() * x.abs().ln_1p()
}

/// Applies [`signed_log`] to every continuous column and drops any row that
/// ends up non-finite.
pub fn signed_log_transform(frame: &FeatureFrame) -> FeatureFrame {
    let mut out = frame.clone();
    for row in &mut out.rows {
        for (v, &flag) in row.iter_mut().zip(&frame.binary) {
            if !flag {
                *v = if *v == 0.0 { 0.0 } else { signed_log(*v) };
            }
        }
    }
    let dropped = out.retain_rows(|r| r.iter().all(|v| v.is_finite()));
    if dropped > 0 {
        log::warn!("dropped {dropped} rows with non-finite values after the log transform");
    }
    out
}

/// Per-column standardisation parameters of the continuous columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalerStats {
    pub columns: Vec<String>,
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl ScalerStats {
    /// Standardises the named columns of `frame` with the stored statistics,
    /// dropping continuous columns that were discarded at fit time.
    pub fn apply(&self, frame: &FeatureFrame) -> Result<FeatureFrame> {
        let mut keep = Vec::with_capacity(frame.n_cols());
        let mut scale = Vec::with_capacity(frame.n_cols());
        for (j, name) in frame.column_names.iter().enumerate() {
            if frame.binary[j] {
                keep.push(j);
                scale.push(None);
            } else if let Some(k) = self.columns.iter().position(|c| c == name) {
                keep.push(j);
                scale.push(Some((self.means[k], self.stds[k])));
            }
        }
        for name in &self.columns {
            if frame.column_index(name).is_none() {
                return Err(Error::MissingColumn(name.clone()));
            }
        }
        let mut out = frame.select_columns(&keep);
        for row in &mut out.rows {
            for (v, s) in row.iter_mut().zip(&scale) {
                if let Some((m, sd)) = s {
                    *v = (*v - m) / sd;
                }
            }
        }
        Ok(out)
    }
}

/// Zero-mean, unit-variance (population convention) continuous columns.
/// Constant continuous columns are dropped with a warning; flag columns pass
/// through untouched.
pub fn standard_scale(frame: &FeatureFrame) -> Result<(FeatureFrame, ScalerStats)> {
    if frame.n_rows() < 2 {
        return Err(Error::InsufficientSamples(format!(
            "scaling needs at least 2 rows, got {}",
            frame.n_rows()
        )));
    }
    let n = frame.n_rows() as f64;
    let mut stats = ScalerStats {
        columns: Vec::new(),
        means: Vec::new(),
        stds: Vec::new(),
    };
    for j in 0..frame.n_cols() {
        if frame.binary[j] {
            continue;
        }
        let col = frame.column(j);
        let mean = col.iter().sum::<f64>() / n;
        let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let std = var.sqrt();
        if std <= f64::EPSILON * mean.abs().max(1.0) {
            log::warn!("dropping constant column `{}`", frame.column_names[j]);
            continue;
        }
        stats.columns.push(frame.column_names[j].clone());
        stats.means.push(mean);
        stats.stds.push(std);
    }
    let scaled = stats.apply(frame)?;
    Ok((scaled, stats))
}
