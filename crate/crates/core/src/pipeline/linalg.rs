use nalgebra::{DMatrix, DVector};

/// Column means of a row-major matrix.
pub(crate) fn column_means(rows: &[Vec<f64>], width: usize) -> Vec<f64> {
    let mut means = vec![0.0; width];
    for r in rows {
        for (m, v) in means.iter_mut().zip(r) {
            *m += v;
        }
    }
    let n = rows.len().max(1) as f64;
    means.iter_mut().for_each(|m| *m /= n);
    means
}

/// `XcᵀXc` of the column-centred data.
pub(crate) fn centred_gram(rows: &[Vec<f64>], width: usize) -> (DMatrix<f64>, Vec<f64>) {
    let means = column_means(rows, width);
    let mut g = DMatrix::<f64>::zeros(width, width);
    let mut centred = vec![0.0; width];
    for r in rows {
        for j in 0..width {
            centred[j] = r[j] - means[j];
        }
        for a in 0..width {
            let ca = centred[a];
            if ca == 0.0 {
                continue;
            }
            for b in a..width {
                g[(a, b)] += ca * centred[b];
            }
        }
    }
    for a in 0..width {
        for b in 0..a {
            g[(a, b)] = g[(b, a)];
        }
    }
    (g, means)
}

/// Minimum-norm least-squares solution of `a·x = b` via SVD.
pub(crate) fn lstsq(a: DMatrix<f64>, b: &DVector<f64>) -> Option<DVector<f64>> {
    let scale = a.amax().max(f64::MIN_POSITIVE);
    let svd = a.svd(true, true);
    let eps = scale * 1e-12 * (svd.singular_values.len() as f64);
    svd.solve(b, eps).ok()
}
