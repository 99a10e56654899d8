use nalgebra::{DMatrix, DVector};

use super::frame::FeatureFrame;
use super::linalg::{centred_gram, lstsq};
use crate::error::{Error, Result};

/// Reported VIF when a column is (numerically) a linear combination of the
/// others, or constant.
pub const VIF_CAP: f64 = 1e12;

fn vif_from_gram(g: &DMatrix<f64>, j: usize) -> f64 {
    let k = g.nrows();
    let tss = g[(j, j)];
    if tss <= f64::EPSILON * g.diagonal().amax().max(f64::MIN_POSITIVE) {
        return VIF_CAP;
    }
    if k == 1 {
        return 1.0;
    }
    let others: Vec<usize> = (0..k).filter(|&i| i != j).collect();
    let sub = DMatrix::from_fn(others.len(), others.len(), |a, b| g[(others[a], others[b])]);
    let rhs = DVector::from_iterator(others.len(), others.iter().map(|&i| g[(i, j)]));
    let Some(beta) = lstsq(sub, &rhs) else {
        return VIF_CAP;
    };
    let explained = beta.dot(&rhs);
    let r2 = (explained / tss).clamp(0.0, 1.0);
    if 1.0 - r2 <= 1.0 / VIF_CAP {
        VIF_CAP
    } else {
        1.0 / (1.0 - r2)
    }
}

/// `VIF_j = 1 / (1 − R²_j)`, with `R²_j` from regressing column `j` (with
/// intercept) on all other columns.
pub fn compute_vif(frame: &FeatureFrame) -> Result<Vec<f64>> {
    if frame.n_cols() < 2 {
        return Err(Error::InsufficientSamples(format!(
            "VIF needs at least 2 columns, got {}",
            frame.n_cols()
        )));
    }
    let (g, _) = centred_gram(&frame.rows, frame.n_cols());
    Ok((0..frame.n_cols()).map(|j| vif_from_gram(&g, j)).collect())
}

/// Repeatedly removes the column with the largest VIF (lowest index on ties)
/// until every remaining VIF is at most `threshold`.
pub fn vif_select(frame: &FeatureFrame, threshold: f64) -> Result<(FeatureFrame, Vec<String>)> {
    if frame.n_cols() < 2 {
        return Err(Error::InsufficientSamples(format!(
            "VIF selection needs at least 2 columns, got {}",
            frame.n_cols()
        )));
    }
    let (g_full, _) = centred_gram(&frame.rows, frame.n_cols());
    let mut alive: Vec<usize> = (0..frame.n_cols()).collect();
    loop {
        let g = DMatrix::from_fn(alive.len(), alive.len(), |a, b| g_full[(alive[a], alive[b])]);
        let vifs: Vec<f64> = (0..alive.len()).map(|j| vif_from_gram(&g, j)).collect();
        let (worst, &max) = vifs
            .iter()
            .enumerate()
            .fold((0, &f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
        if max <= threshold {
            break;
        }
        log::info!(
            "VIF drop `{}` ({max:.3})",
            frame.column_names[alive[worst]]
        );
        alive.remove(worst);
        if alive.is_empty() {
            return Err(Error::DegenerateData("VIF selection eliminated every column".into()));
        }
    }
    let out = frame.select_columns(&alive);
    let kept = out.column_names.clone();
    Ok((out, kept))
}
