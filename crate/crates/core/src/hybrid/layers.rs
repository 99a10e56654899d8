use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum LayerKind {
    Dense,
    Relu,
    Quantum,
    Softmax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerSpec {
    pub kind: LayerKind,
    pub in_dim: usize,
    pub out_dim: usize,
    pub trainable: bool,
}

impl LayerSpec {
    pub fn dense(in_dim: usize, out_dim: usize, trainable: bool) -> Self {
        Self {
            kind: LayerKind::Dense,
            in_dim,
            out_dim,
            trainable,
        }
    }

    pub fn relu(dim: usize) -> Self {
        Self {
            kind: LayerKind::Relu,
            in_dim: dim,
            out_dim: dim,
            trainable: false,
        }
    }

    pub fn quantum(n_qubits: usize) -> Self {
        Self {
            kind: LayerKind::Quantum,
            in_dim: 1 << n_qubits,
            out_dim: n_qubits,
            trainable: true,
        }
    }

    pub fn softmax(dim: usize) -> Self {
        Self {
            kind: LayerKind::Softmax,
            in_dim: dim,
            out_dim: dim,
            trainable: false,
        }
    }
}

/// Fully connected layer, `weights` row-major `out_dim × in_dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseLayer {
    pub in_dim: usize,
    pub out_dim: usize,
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

impl DenseLayer {
    pub fn zeros(in_dim: usize, out_dim: usize) -> Self {
        Self {
            in_dim,
            out_dim,
            weights: vec![0.0; in_dim * out_dim],
            bias: vec![0.0; out_dim],
        }
    }

    /// Glorot-uniform kernel, zero bias.
    pub fn glorot<R: Rng + ?Sized>(in_dim: usize, out_dim: usize, rng: &mut R) -> Self {
        let limit = (6.0 / (in_dim + out_dim) as f64).sqrt();
        let weights = (0..in_dim * out_dim)
            .map(|_| rng.gen_range(-limit..limit))
            .collect();
        Self {
            in_dim,
            out_dim,
            weights,
            bias: vec![0.0; out_dim],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.len() != self.in_dim * self.out_dim {
            return Err(Error::DimensionMismatch {
                expected: self.in_dim * self.out_dim,
                got: self.weights.len(),
            });
        }
        if self.bias.len() != self.out_dim {
            return Err(Error::DimensionMismatch {
                expected: self.out_dim,
                got: self.bias.len(),
            });
        }
        Ok(())
    }

    pub fn forward(&self, input: &[f64]) -> Vec<f64> {
        debug_assert_eq!(input.len(), self.in_dim);
        self.weights
            .chunks_exact(self.in_dim)
            .zip(&self.bias)
            .map(|(row, b)| row.iter().zip(input).map(|(w, x)| w * x).sum::<f64>() + b)
            .collect()
    }
}

pub fn relu(values: &mut [f64]) {
    for v in values {
        *v = v.max(0.0);
    }
}

/// Shift-invariant softmax.
pub fn softmax(logits: &[f64]) -> Result<Vec<f64>> {
    if logits.is_empty() {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    if let Some(&bad) = logits.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("softmax logit {bad}")));
    }
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|v| (v - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    Ok(exps.into_iter().map(|e| e / total).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn softmax_examples() {
        assert_eq!(softmax(&[0.0, 0.0]).unwrap(), [0.5, 0.5]);
        let p = softmax(&[2f64.ln(), 0.0]).unwrap();
        assert!((p[0] - 2.0 / 3.0).abs() < 1e-15 && (p[1] - 1.0 / 3.0).abs() < 1e-15);
        let a = softmax(&[0.3, -1.2, 2.0]).unwrap();
        let b = softmax(&[1000.3, 998.8, 1002.0]).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!((b.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(softmax(&[f64::INFINITY, 0.0]).is_err());
    }

    #[test]
    fn dense_forward_row_major() {
        let layer = DenseLayer {
            in_dim: 2,
            out_dim: 3,
            weights: vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
            bias: vec![0.5, 0.0, -1.0],
        };
        assert_eq!(layer.forward(&[1.0, -1.0]), [-0.5, -1.0, -2.0]);
    }

    #[test]
    fn glorot_respects_limit() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let layer = DenseLayer::glorot(4, 512, &mut rng);
        let limit = (6.0f64 / 516.0).sqrt();
        assert!(layer.weights.iter().all(|w| w.abs() < limit));
        assert!(layer.bias.iter().all(|&b| b == 0.0));
    }
}
