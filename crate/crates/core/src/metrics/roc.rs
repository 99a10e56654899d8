use crate::error::{Error, Result};

fn check(labels: &[u8], scores: &[f64]) -> Result<(usize, usize)> {
    if labels.len() != scores.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            got: scores.len(),
        });
    }
    if let Some(&bad) = scores.iter().find(|s| s.is_nan()) {
        return Err(Error::NonFinite(format!("score {bad}")));
    }
    let pos = labels.iter().filter(|&&y| y == 1).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::DegenerateData("ROC needs both classes".into()));
    }
    Ok((pos, neg))
}

/// Indices sorted by descending score.
fn descending(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    idx
}

/// Mann–Whitney AUC: the fraction of positive/negative pairs ranked
/// correctly, with tied pairs counting ½.
pub fn roc_auc(labels: &[u8], scores: &[f64]) -> Result<f64> {
    let (pos, neg) = check(labels, scores)?;
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    // sum of (1-based, mid-) ranks of positives, doubled to stay integral
    let mut twice_rank_sum: u64 = 0;
    let mut start = 0;
    while start < idx.len() {
        let mut end = start;
        while end + 1 < idx.len() && scores[idx[end + 1]] == scores[idx[start]] {
            end += 1;
        }
        let twice_mid = (start + 1 + end + 1) as u64;
        let group_pos = idx[start..=end].iter().filter(|&&i| labels[i] == 1).count() as u64;
        twice_rank_sum += twice_mid * group_pos;
        start = end + 1;
    }
    let pos = pos as u64;
    let twice_u = twice_rank_sum - pos * (pos + 1);
    Ok(twice_u as f64 / 2.0 / (pos as f64 * neg as f64))
}

/// `(fpr, tpr)` after each distinct score threshold, from `(0, 0)` to
/// `(1, 1)`. Interior points lying on a straight horizontal or vertical run
/// are dropped; the curve and its area are unchanged.
pub fn roc_points(labels: &[u8], scores: &[f64]) -> Result<Vec<(f64, f64)>> {
    let (pos, neg) = check(labels, scores)?;
    let idx = descending(scores);
    let mut points = vec![(0.0, 0.0)];
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut i = 0;
    while i < idx.len() {
        let threshold = scores[idx[i]];
        while i < idx.len() && scores[idx[i]] == threshold {
            if labels[idx[i]] == 1 {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        points.push((fp as f64 / neg as f64, tp as f64 / pos as f64));
    }
    let mut kept: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for (i, &p) in points.iter().enumerate() {
        if let (Some(&prev), Some(&next)) = (kept.last(), points.get(i + 1)) {
            let vertical = prev.0 == p.0 && p.0 == next.0;
            let horizontal = prev.1 == p.1 && p.1 == next.1;
            if vertical || horizontal {
                continue;
            }
        }
        kept.push(p);
    }
    Ok(kept)
}

pub fn trapezoid_area(points: &[(f64, f64)]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[1].1 + w[0].1) / 2.0)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(roc_auc(&[1, 1, 0, 0], &[0.9, 0.8, 0.3, 0.2]).unwrap(), 1.0);
        assert_eq!(roc_auc(&[1, 0, 1, 0], &[0.4; 4]).unwrap(), 0.5);
        assert!(roc_auc(&[1, 1], &[0.1, 0.2]).is_err());
    }

    #[test]
    fn perfect_points() {
        let p = roc_points(&[1, 1, 0, 0], &[0.9, 0.8, 0.3, 0.2]).unwrap();
        assert_eq!(p, vec![(0.0, 0.0), (0.0, 1.0), (1.0, 1.0)]);
    }

    #[test]
    fn last_ranked_positive_runs_along_the_axis() {
        let p = roc_points(&[0, 0, 0, 1], &[0.9, 0.8, 0.7, 0.1]).unwrap();
        assert_eq!(p, vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]);
        assert_eq!(roc_auc(&[0, 0, 0, 1], &[0.9, 0.8, 0.7, 0.1]).unwrap(), 0.0);
    }
}
