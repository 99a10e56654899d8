use super::frame::FeatureFrame;
use crate::error::{Error, Result};
use crate::exec::Execution;

fn mean_k_nearest(point: &[f64], minority: &[&Vec<f64>], k: usize) -> f64 {
    let mut d: Vec<f64> = minority
        .iter()
        .map(|m| {
            m.iter()
                .zip(point)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    if k < d.len() {
        d.select_nth_unstable_by(k - 1, |a, b| a.total_cmp(b));
        d.truncate(k);
    }
    d.sort_unstable_by(|a, b| a.total_cmp(b));
    d.iter().sum::<f64>() / k as f64
}

/// NearMiss-1: keeps the `keep` rows of class `majority_label` with the
/// smallest mean Euclidean distance to their `k` nearest rows of the other
/// class. Ties go to the earlier row; every other-class row is kept. Output
/// preserves the input row order.
pub fn nearmiss_select(
    frame: &FeatureFrame,
    majority_label: u8,
    keep: usize,
    k: usize,
    exec: Execution,
) -> Result<FeatureFrame> {
    let majority: Vec<usize> = (0..frame.n_rows())
        .filter(|&i| frame.labels[i] == majority_label)
        .collect();
    let minority: Vec<&Vec<f64>> = (0..frame.n_rows())
        .filter(|&i| frame.labels[i] != majority_label)
        .map(|i| &frame.rows[i])
        .collect();
    if minority.is_empty() {
        return Err(Error::DegenerateData("NearMiss needs a non-empty minority class".into()));
    }
    if majority.len() < keep {
        return Err(Error::InsufficientSamples(format!(
            "cannot keep {keep} majority rows out of {}",
            majority.len()
        )));
    }
    if majority.len() == keep {
        return Ok(frame.clone());
    }
    if k == 0 {
        return Err(Error::Config("NearMiss k must be at least 1".into()));
    }
    let k = if k > minority.len() {
        log::warn!("NearMiss k={k} exceeds minority count {}; clamping", minority.len());
        minority.len()
    } else {
        k
    };

    let scores = exec.map(&majority, |&i| mean_k_nearest(&frame.rows[i], &minority, k));
    let mut ranked: Vec<usize> = (0..majority.len()).collect();
    ranked.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    let mut retained = vec![false; frame.n_rows()];
    for &r in &ranked[..keep] {
        retained[majority[r]] = true;
    }
    let indices: Vec<usize> = (0..frame.n_rows())
        .filter(|&i| frame.labels[i] != majority_label || retained[i])
        .collect();
    Ok(frame.select_rows(&indices))
}

/// Undersamples the larger class to `round(target_ratio · minority)` rows.
pub fn nearmiss_undersample(
    frame: &FeatureFrame,
    target_ratio: f64,
    k: usize,
    exec: Execution,
) -> Result<FeatureFrame> {
    if !(target_ratio > 0.0 && target_ratio.is_finite()) {
        return Err(Error::Config(format!("invalid target ratio {target_ratio}")));
    }
    let [neg, pos] = frame.class_counts();
    if neg == 0 || pos == 0 {
        return Err(Error::DegenerateData("NearMiss needs both classes present".into()));
    }
    let (majority_label, minority_count) = if neg >= pos { (0, pos) } else { (1, neg) };
    let keep = (target_ratio * minority_count as f64).round() as usize;
    nearmiss_select(frame, majority_label, keep, k, exec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_is_exact() {
        let n_min = 10;
        let mut cols = vec![Vec::new(), Vec::new()];
        let mut labels = Vec::new();
        for i in 0..100 {
            cols[0].push((i * 7 % 13) as f64);
            cols[1].push((i * 5 % 11) as f64);
            labels.push(u8::from(i < n_min));
        }
        let f = FeatureFrame::from_columns(&cols, labels).unwrap();
        let out = nearmiss_undersample(&f, 3.0, 3, Execution::Sequential).unwrap();
        assert_eq!(out.class_counts(), [30, 10]);
        let minority_in: Vec<_> = (0..n_min).map(|i| &f.rows[i]).collect();
        let minority_out: Vec<_> = out.rows.iter().zip(&out.labels).filter(|(_, &y)| y == 1).map(|(r, _)| r).collect();
        assert_eq!(minority_in, minority_out);
    }

    #[test]
    fn already_balanced_is_unchanged() {
        let f = FeatureFrame::from_columns(&[vec![0.0, 1.0, 2.0, 3.0]], vec![0, 1, 0, 1]).unwrap();
        assert_eq!(nearmiss_undersample(&f, 1.0, 3, Execution::Sequential).unwrap(), f);
    }

    #[test]
    fn empty_minority_and_short_majority() {
        let f = FeatureFrame::from_columns(&[vec![0.0, 1.0]], vec![0, 0]).unwrap();
        assert!(nearmiss_select(&f, 0, 1, 1, Execution::Sequential).is_err());
        let f = FeatureFrame::from_columns(&[vec![0.0, 1.0, 2.0]], vec![0, 1, 1]).unwrap();
        assert!(nearmiss_undersample(&f, 3.0, 1, Execution::Sequential).is_err());
    }
}
