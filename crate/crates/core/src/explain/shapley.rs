use super::{Attribution, Method};
use crate::error::{Error, Result};
use crate::exec::Execution;

pub const MAX_SHAPLEY_FEATURES: usize = 12;

/// Exact Shapley values by enumerating all `2^m` coalitions.
///
/// A coalition's value is the model output with out-of-coalition features
/// set to `background`. Feature `j` receives
/// `Σ_{s ∌ j} |s|!(m−|s|−1)!/m! · (v(s ∪ {j}) − v(s))`.
pub fn shapley_exact<F>(
    model_fn: F,
    instance: &[f64],
    background: &[f64],
    names: Option<&[String]>,
    exec: Execution,
) -> Result<Attribution>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    let m = instance.len();
    if background.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: background.len(),
        });
    }
    if m == 0 || m > MAX_SHAPLEY_FEATURES {
        return Err(Error::Config(format!(
            "exact Shapley enumeration supports 1..={MAX_SHAPLEY_FEATURES} features, got {m}"
        )));
    }
    let values = exec.map_range(1 << m, |mask| {
        let point: Vec<f64> = (0..m)
            .map(|j| if mask >> j & 1 == 1 { instance[j] } else { background[j] })
            .collect();
        model_fn(&point)
    });
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("model output {bad}")));
    }

    // weight[s] = s!(m−s−1)!/m!
    let weight: Vec<f64> = (0..m)
        .map(|s| {
            let mut w = 1.0 / m as f64;
            for i in 1..=s {
                w *= i as f64 / (m - i) as f64;
            }
            w
        })
        .collect();

    let phi: Vec<f64> = (0..m)
        .map(|j| {
            let bit = 1usize << j;
            (0..1usize << m)
                .filter(|mask| mask & bit == 0)
                .map(|mask| weight[mask.count_ones() as usize] * (values[mask | bit] - values[mask]))
                .sum()
        })
        .collect();
    Ok(Attribution::new(
        Method::ShapExact,
        values[0],
        values[(1 << m) - 1],
        names,
        &phi,
    ))
}
