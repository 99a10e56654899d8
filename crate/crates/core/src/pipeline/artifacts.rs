use serde::{Deserialize, Serialize};

use super::frame::FeatureFrame;
use super::pca::{pca_fit_transform, Pca};
use super::splits::{build_splits, SamplingConfig};
use super::transform::{signed_log_transform, standard_scale, ScalerStats};
use super::vif::vif_select;
use crate::error::{Error, Result};
use crate::exec::Execution;

pub const PCA_COMPONENTS: usize = 4;

/// Everything needed to replay the preprocessing on new cleaned rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreprocessArtifacts {
    pub kept_columns: Vec<String>,
    pub scaler_columns: Vec<String>,
    pub scaler_means: Vec<f64>,
    pub scaler_stds: Vec<f64>,
    pub pca_means: Vec<f64>,
    pub pca_components: Vec<Vec<f64>>,
    pub pca_explained_variance: Vec<f64>,
    pub vif_threshold: f64,
    pub sampling: SamplingConfig,
}

impl PreprocessArtifacts {
    fn scaler(&self) -> ScalerStats {
        ScalerStats {
            columns: self.scaler_columns.clone(),
            means: self.scaler_means.clone(),
            stds: self.scaler_stds.clone(),
        }
    }

    fn pca(&self) -> Pca {
        Pca {
            means: self.pca_means.clone(),
            components: self.pca_components.clone(),
            explained_variance: self.pca_explained_variance.clone(),
        }
    }

    /// Signed log → stored scaling → kept columns → stored projection.
    pub fn transform(&self, cleaned: &FeatureFrame) -> Result<FeatureFrame> {
        let scaled = self.scaler().apply(&signed_log_transform(cleaned))?;
        let idx = self
            .kept_columns
            .iter()
            .map(|c| scaled.column_index(c).ok_or_else(|| Error::MissingColumn(c.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.pca().transform(&scaled.select_columns(&idx))
    }
}

#[derive(Debug, Clone)]
pub struct PreprocessOutput {
    pub train: FeatureFrame,
    pub test: FeatureFrame,
    pub artifacts: PreprocessArtifacts,
}

/// Signed log → standard scaling → VIF selection → NearMiss splits → PCA.
pub fn preprocess(
    cleaned: &FeatureFrame,
    sampling: &SamplingConfig,
    vif_threshold: f64,
    exec: Execution,
) -> Result<PreprocessOutput> {
    let logged = signed_log_transform(cleaned);
    let (scaled, scaler) = standard_scale(&logged)?;
    let (selected, kept_columns) = vif_select(&scaled, vif_threshold)?;
    let (train, test) = build_splits(&selected, sampling, exec)?;
    let (train_pcs, test_pcs, pca) = pca_fit_transform(&train, &test, PCA_COMPONENTS)?;
    Ok(PreprocessOutput {
        train: train_pcs,
        test: test_pcs,
        artifacts: PreprocessArtifacts {
            kept_columns,
            scaler_columns: scaler.columns,
            scaler_means: scaler.means,
            scaler_stds: scaler.stds,
            pca_means: pca.means,
            pca_components: pca.components,
            pca_explained_variance: pca.explained_variance,
            vif_threshold,
            sampling: sampling.clone(),
        },
    })
}
