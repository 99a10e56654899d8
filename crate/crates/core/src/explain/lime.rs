use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{Attribution, Method};
use crate::error::{Error, Result};
use crate::exec::Execution;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LimeConfig {
    pub n_samples: usize,
    /// Defaults to `0.75·√m` when unset.
    pub kernel_width: Option<f64>,
    pub seed: u64,
}

impl Default for LimeConfig {
    fn default() -> Self {
        Self {
            n_samples: 5000,
            kernel_width: None,
            seed: 42,
        }
    }
}

impl LimeConfig {
    pub fn width_for(&self, m: usize) -> f64 {
        self.kernel_width.unwrap_or(0.75 * (m as f64).sqrt())
    }
}

/// Proximity-weighted linear surrogate around `instance`.
///
/// Perturbations are `instance + N(0, I)`, weighted by
/// `exp(−‖z − x‖² / width²)`; the surrogate minimises the weighted squared
/// error with no sparsity penalty.
pub fn lime_explain<F>(
    model_fn: F,
    instance: &[f64],
    config: &LimeConfig,
    names: Option<&[String]>,
    exec: Execution,
) -> Result<Attribution>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    let m = instance.len();
    let width = config.width_for(m);
    if m == 0 {
        return Err(Error::Config("LIME needs at least one feature".into()));
    }
    if config.n_samples < m + 1 {
        return Err(Error::Config(format!(
            "LIME needs at least {} samples for {m} features",
            m + 1
        )));
    }
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::Config(format!("kernel width must be positive, got {width}")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let offsets: Vec<Vec<f64>> = (0..config.n_samples)
        .map(|_| (0..m).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    let targets = exec.map(&offsets, |d| {
        let z: Vec<f64> = instance.iter().zip(d).map(|(x, e)| x + e).collect();
        model_fn(&z)
    });
    if let Some(bad) = targets.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("model output {bad}")));
    }

    // normal equations in offset coordinates: h(z) = c₀ + Σ c_j (z_j − x_j)
    let p = m + 1;
    let mut xtwx = DMatrix::<f64>::zeros(p, p);
    let mut xtwy = DVector::<f64>::zeros(p);
    let mut row = vec![0.0; p];
    for (d, &y) in offsets.iter().zip(&targets) {
        let dist2: f64 = d.iter().map(|e| e * e).sum();
        let w = (-dist2 / (width * width)).exp();
        row[0] = 1.0;
        row[1..].copy_from_slice(d);
        for a in 0..p {
            let wa = w * row[a];
            xtwy[a] += wa * y;
            for b in a..p {
                xtwx[(a, b)] += wa * row[b];
            }
        }
    }
    for a in 0..p {
        for b in 0..a {
            xtwx[(a, b)] = xtwx[(b, a)];
        }
    }
    let coef = xtwx
        .cholesky()
        .ok_or_else(|| Error::Singular("weighted LIME design is not positive definite".into()))?
        .solve(&xtwy);
    let slopes: Vec<f64> = coef.iter().skip(1).copied().collect();
    let intercept = coef[0] - slopes.iter().zip(instance).map(|(c, x)| c * x).sum::<f64>();
    Ok(Attribution::new(Method::Lime, intercept, model_fn(instance), names, &slopes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_model() {
        let attr = lime_explain(|_| 0.7, &[0.3, -0.1, 2.0, 1.0], &LimeConfig::default(), None, Execution::Sequential).unwrap();
        assert!(attr.values().iter().all(|c| c.abs() < 1e-6));
        assert!((attr.base_value - 0.7).abs() < 1e-6);
    }

    #[test]
    fn config_checks() {
        let f = |_: &[f64]| 0.0;
        let small = LimeConfig { n_samples: 3, ..Default::default() };
        assert!(lime_explain(f, &[0.0; 4], &small, None, Execution::Sequential).is_err());
        let bad_width = LimeConfig { kernel_width: Some(0.0), ..Default::default() };
        assert!(lime_explain(f, &[0.0; 4], &bad_width, None, Execution::Sequential).is_err());
    }
}
