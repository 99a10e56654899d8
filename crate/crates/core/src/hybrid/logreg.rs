use serde::{Deserialize, Serialize};

use crate::data::Samples;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogregConfig {
    pub iterations: usize,
    pub learning_rate: f64,
}

impl Default for LogregConfig {
    fn default() -> Self {
        Self {
            iterations: 1000,
            learning_rate: 1.0,
        }
    }
}

/// Unregularised logistic model `σ(w·x + b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticRegression {
    pub weights: Vec<f64>,
    pub bias: f64,
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

impl LogisticRegression {
    pub fn zeros(dim: usize) -> Self {
        Self {
            weights: vec![0.0; dim],
            bias: 0.0,
        }
    }

    /// Full-batch gradient descent on the mean log-loss from zero weights.
    pub fn fit(data: &Samples, config: LogregConfig) -> Result<Self> {
        let counts = data.class_counts();
        if counts.contains(&0) {
            return Err(Error::DegenerateData(format!(
                "logistic regression needs both classes, got {counts:?}"
            )));
        }
        let dim = data.dim();
        let n = data.len() as f64;
        let mut model = Self::zeros(dim);
        for _ in 0..config.iterations {
            let mut gw = vec![0.0; dim];
            let mut gb = 0.0;
            for (x, &y) in data.features.iter().zip(&data.labels) {
                let r = model.predict_proba(x) - f64::from(y);
                gw.iter_mut().zip(x).for_each(|(g, xi)| *g += r * xi);
                gb += r;
            }
            for (w, g) in model.weights.iter_mut().zip(&gw) {
                *w -= config.learning_rate * g / n;
            }
            model.bias -= config.learning_rate * gb / n;
        }
        if model.weights.iter().any(|w| !w.is_finite()) || !model.bias.is_finite() {
            return Err(Error::NonFinite("logistic regression diverged".into()));
        }
        Ok(model)
    }

    pub fn predict_proba(&self, x: &[f64]) -> f64 {
        let z = self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.bias;
        sigmoid(z)
    }

    pub fn predict(&self, x: &[f64]) -> u8 {
        u8::from(self.predict_proba(x) >= 0.5)
    }
}

/// Fits on `train` and returns `(hard labels, P(class 1))` for `test` rows.
pub fn logistic_regression(
    train: &Samples,
    test: &[Vec<f64>],
    config: LogregConfig,
) -> Result<(Vec<u8>, Vec<f64>)> {
    let model = LogisticRegression::fit(train, config)?;
    let probs: Vec<f64> = test.iter().map(|x| model.predict_proba(x)).collect();
    let labels = probs.iter().map(|&p| u8::from(p >= 0.5)).collect();
    Ok((labels, probs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_weights_give_one_half() {
        let m = LogisticRegression::zeros(3);
        assert_eq!(m.predict_proba(&[5.0, -2.0, 1.0]), 0.5);
    }

    #[test]
    fn separable_toy_set() {
        let features = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.2],
            vec![0.3, 1.0],
            vec![3.0, 3.0],
            vec![4.0, 3.5],
            vec![3.2, 4.1],
        ];
        let train = Samples::new(features, vec![0, 0, 0, 1, 1, 1]).unwrap();
        let test = vec![vec![0.5, 0.5], vec![3.5, 3.5], vec![-1.0, 0.0], vec![5.0, 4.0]];
        let (pred, _) = logistic_regression(&train, &test, LogregConfig::default()).unwrap();
        assert_eq!(pred, [0, 1, 0, 1]);
    }

    #[test]
    fn single_class_rejected() {
        let train = Samples::new(vec![vec![1.0]; 4], vec![1; 4]).unwrap();
        assert!(LogisticRegression::fit(&train, LogregConfig::default()).is_err());
    }
}
