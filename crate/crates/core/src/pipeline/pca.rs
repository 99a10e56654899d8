use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use super::frame::FeatureFrame;
use super::linalg::centred_gram;
use crate::error::{Error, Result};

/// Principal axes fitted on training data.
///
/// `components` are orthonormal rows sorted by descending explained
/// variance; each row's largest-magnitude entry is positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pca {
    pub means: Vec<f64>,
    pub components: Vec<Vec<f64>>,
    /// Sample (N − 1) covariance eigenvalues matching `components`.
    pub explained_variance: Vec<f64>,
}

impl Pca {
    pub fn fit(rows: &[Vec<f64>], n_components: usize) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if width < n_components {
            return Err(Error::InsufficientSamples(format!(
                "{width} columns cannot yield {n_components} principal components"
            )));
        }
        if rows.len() < n_components.max(2) {
            return Err(Error::InsufficientSamples(format!(
                "{} rows cannot yield {n_components} principal components",
                rows.len()
            )));
        }
        let (gram, means) = centred_gram(rows, width);
        let cov = gram / (rows.len() - 1) as f64;
        let eig = SymmetricEigen::new(cov);
        let mut order: Vec<usize> = (0..width).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .total_cmp(&eig.eigenvalues[a])
                .then(a.cmp(&b))
        });
        let mut components = Vec::with_capacity(n_components);
        let mut explained_variance = Vec::with_capacity(n_components);
        for &i in order.iter().take(n_components) {
            let mut v: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
            let pivot = v
                .iter()
                .enumerate()
                .fold(0, |best, (j, x)| if x.abs() > v[best].abs() { j } else { best });
            if v[pivot] < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            components.push(v);
            explained_variance.push(eig.eigenvalues[i]);
        }
        Ok(Self {
            means,
            components,
            explained_variance,
        })
    }

    pub fn transform_row(&self, row: &[f64]) -> Vec<f64> {
        self.components
            .iter()
            .map(|c| {
                c.iter()
                    .zip(row.iter().zip(&self.means))
                    .map(|(w, (x, m))| w * (x - m))
                    .sum()
            })
            .collect()
    }

    pub fn transform(&self, frame: &FeatureFrame) -> Result<FeatureFrame> {
        if frame.n_cols() != self.means.len() {
            return Err(Error::DimensionMismatch {
                expected: self.means.len(),
                got: frame.n_cols(),
            });
        }
        Ok(FeatureFrame {
            column_names: (1..=self.components.len()).map(|i| format!("pc{i}")).collect(),
            binary: vec![false; self.components.len()],
            rows: frame.rows.iter().map(|r| self.transform_row(r)).collect(),
            labels: frame.labels.clone(),
            row_ids: frame.row_ids.clone(),
        })
    }
}

/// Fits on `train` only and projects both frames.
pub fn pca_fit_transform(
    train: &FeatureFrame,
    test: &FeatureFrame,
    n_components: usize,
) -> Result<(FeatureFrame, FeatureFrame, Pca)> {
    if test.column_names != train.column_names {
        return Err(Error::DimensionMismatch {
            expected: train.n_cols(),
            got: test.n_cols(),
        });
    }
    let pca = Pca::fit(&train.rows, n_components)?;
    Ok((pca.transform(train)?, pca.transform(test)?, pca))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn too_few_columns() {
        let f = FeatureFrame::from_columns(&vec![vec![1.0, 2.0, 3.0]; 3], vec![0, 1, 0]).unwrap();
        assert!(pca_fit_transform(&f, &f, 4).is_err());
    }
}
