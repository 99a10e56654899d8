use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::layers::{relu, softmax, DenseLayer, LayerKind, LayerSpec};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::quantum::{quantum_layer_forward, SelWeights};

pub const QUANTUM_QUBITS: usize = 2;
pub const QUANTUM_LAYERS: usize = 1;

/// Ordered layer stack with its weights.
///
/// Every layer before the quantum layer is frozen; the layers after it are a
/// trainable dense head followed by softmax. Class 0 is not-backorder, class
/// 1 is backorder.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridModel {
    layers: Vec<LayerSpec>,
    dense: Vec<DenseLayer>,
    quantum_weights: SelWeights,
    seed: u64,
    pub preprocessing_artifact_ref: Option<String>,
    /// Feature means of the training data; the explainers' reference point.
    pub background: Option<Vec<f64>>,
}

impl HybridModel {
    /// The reference architecture: 4 → 512 → 256 → 4 frozen ReLU stack,
    /// 2-qubit single-layer SEL node, trainable 2-unit softmax head.
    pub fn qamplifynet(seed: u64) -> Self {
        Self::with_hidden(4, &[512, 256], seed)
    }

    /// Same shape as [`HybridModel::qamplifynet`] with custom input and
    /// hidden widths; the last frozen layer always has `2^n` units.
    pub fn with_hidden(input_dim: usize, hidden: &[usize], seed: u64) -> Self {
        let q_in = 1 << QUANTUM_QUBITS;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut layers = Vec::new();
        let mut dense = Vec::new();
        let mut prev = input_dim;
        for &width in hidden.iter().chain(std::iter::once(&q_in)) {
            layers.push(LayerSpec::dense(prev, width, false));
            layers.push(LayerSpec::relu(width));
            dense.push(DenseLayer::glorot(prev, width, &mut rng));
            prev = width;
        }
        layers.push(LayerSpec::quantum(QUANTUM_QUBITS));
        let quantum_weights = SelWeights::random(QUANTUM_LAYERS, QUANTUM_QUBITS, &mut rng);
        layers.push(LayerSpec::dense(QUANTUM_QUBITS, 2, true));
        dense.push(DenseLayer::glorot(QUANTUM_QUBITS, 2, &mut rng));
        layers.push(LayerSpec::softmax(2));
        Self {
            layers,
            dense,
            quantum_weights,
            seed,
            preprocessing_artifact_ref: None,
            background: None,
        }
    }

    pub fn from_parts(
        layers: Vec<LayerSpec>,
        dense: Vec<DenseLayer>,
        quantum_weights: SelWeights,
        seed: u64,
    ) -> Result<Self> {
        let model = Self {
            layers,
            dense,
            quantum_weights,
            seed,
            preprocessing_artifact_ref: None,
            background: None,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        let arch = |msg: String| Err(Error::Architecture(msg));
        if self.layers.is_empty() {
            return arch("empty layer stack".into());
        }
        for pair in self.layers.windows(2) {
            if pair[0].out_dim != pair[1].in_dim {
                return arch(format!(
                    "{:?} emits {} values but {:?} expects {}",
                    pair[0].kind, pair[0].out_dim, pair[1].kind, pair[1].in_dim
                ));
            }
        }
        let q = self.quantum_index()?;
        if self.layers[q + 1..]
            .iter()
            .map(|l| (l.kind, l.trainable))
            .ne([(LayerKind::Dense, true), (LayerKind::Softmax, false)])
        {
            return arch("quantum layer must be followed by a trainable dense head and softmax".into());
        }
        if self.layers[..q].iter().any(|l| l.trainable) {
            return arch("layers before the quantum node must be frozen".into());
        }
        let ql = self.layers[q];
        let n = self.quantum_weights.n_qubits();
        if ql.in_dim != 1 << n || ql.out_dim != n {
            return arch(format!(
                "quantum layer {}→{} incompatible with {n}-qubit weights",
                ql.in_dim, ql.out_dim
            ));
        }
        let dense_specs: Vec<_> = self
            .layers
            .iter()
            .filter(|l| l.kind == LayerKind::Dense)
            .collect();
        if dense_specs.len() != self.dense.len() {
            return arch(format!(
                "{} dense layers declared, {} weight sets given",
                dense_specs.len(),
                self.dense.len()
            ));
        }
        for (spec, layer) in dense_specs.iter().zip(&self.dense) {
            layer.validate()?;
            if spec.in_dim != layer.in_dim || spec.out_dim != layer.out_dim {
                return arch(format!(
                    "dense weights {}→{} do not match spec {}→{}",
                    layer.in_dim, layer.out_dim, spec.in_dim, spec.out_dim
                ));
            }
        }
        for l in &self.layers {
            if matches!(l.kind, LayerKind::Relu | LayerKind::Softmax) && l.in_dim != l.out_dim {
                return arch(format!("{:?} must preserve width", l.kind));
            }
        }
        Ok(())
    }

    fn quantum_index(&self) -> Result<usize> {
        let mut it = self
            .layers
            .iter()
            .enumerate()
            .filter(|(_, l)| l.kind == LayerKind::Quantum)
            .map(|(i, _)| i);
        match (it.next(), it.next()) {
            (Some(i), None) => Ok(i),
            _ => Err(Error::Architecture("exactly one quantum layer required".into())),
        }
    }

    pub fn layers(&self) -> &[LayerSpec] {
        &self.layers
    }

    pub fn dense_layers(&self) -> &[DenseLayer] {
        &self.dense
    }

    /// Dense layers ahead of the quantum node.
    pub fn frozen_layers(&self) -> &[DenseLayer] {
        &self.dense[..self.dense.len() - 1]
    }

    pub fn head(&self) -> &DenseLayer {
        self.dense.last().expect("validated model has a head")
    }

    pub fn quantum_weights(&self) -> &SelWeights {
        &self.quantum_weights
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].in_dim
    }

    /// Output of the frozen stack, i.e. the quantum layer's input, and
    /// whether it was all-zero. A dead (all-zero) vector is replaced by the
    /// first basis vector so the amplitude embedding stays defined.
    pub fn quantum_input(&self, features: &[f64]) -> Result<(Vec<f64>, bool)> {
        if features.len() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                got: features.len(),
            });
        }
        if let Some(&bad) = features.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("input feature {bad}")));
        }
        let mut x = features.to_vec();
        let mut dense = self.dense.iter();
        for layer in &self.layers {
            match layer.kind {
                LayerKind::Dense => x = dense.next().expect("validated").forward(&x),
                LayerKind::Relu => relu(&mut x),
                LayerKind::Quantum => break,
                LayerKind::Softmax => unreachable!("softmax precedes quantum layer"),
            }
        }
        if x.iter().all(|&v| v == 0.0) {
            x.iter_mut().for_each(|v| *v = 0.0);
            x[0] = 1.0;
            return Ok((x, true));
        }
        Ok((x, false))
    }

    /// Head logits from quantum expectations.
    pub fn head_logits(&self, expectations: &[f64]) -> Vec<f64> {
        self.head().forward(expectations)
    }

    /// Class probabilities from an already computed quantum-layer input.
    pub fn forward_from_quantum_input(&self, q_input: &[f64]) -> Result<[f64; 2]> {
        let z = quantum_layer_forward(q_input, &self.quantum_weights)?;
        let p = softmax(&self.head_logits(&z))?;
        Ok([p[0], p[1]])
    }

    /// `[p_not_backorder, p_backorder]` for one 4-feature sample.
    pub fn forward(&self, features: &[f64]) -> Result<[f64; 2]> {
        let (q_input, dead) = self.quantum_input(features)?;
        if dead {
            log::debug!("frozen stack produced an all-zero quantum input; using |0…0⟩");
        }
        self.forward_from_quantum_input(&q_input)
    }

    pub fn predict_proba(&self, rows: &[Vec<f64>], exec: Execution) -> Result<Vec<[f64; 2]>> {
        let out = exec.try_map(rows, |row| {
            let (q, dead) = self.quantum_input(row)?;
            Ok::<_, Error>((self.forward_from_quantum_input(&q)?, dead))
        })?;
        let dead = out.iter().filter(|(_, d)| *d).count();
        if dead > 0 {
            log::warn!("{dead} of {} samples had an all-zero quantum input", rows.len());
        }
        Ok(out.into_iter().map(|(p, _)| p).collect())
    }

    /// Trainable parameters flattened as `[SEL angles, head kernel, head bias]`.
    pub fn trainable_params(&self) -> Vec<f64> {
        let head = self.head();
        let mut p = self.quantum_weights.as_slice().to_vec();
        p.extend_from_slice(&head.weights);
        p.extend_from_slice(&head.bias);
        p
    }

    pub fn trainable_count(&self) -> usize {
        let head = self.head();
        self.quantum_weights.param_count() + head.weights.len() + head.bias.len()
    }

    pub fn set_trainable_params(&mut self, params: &[f64]) -> Result<()> {
        if params.len() != self.trainable_count() {
            return Err(Error::DimensionMismatch {
                expected: self.trainable_count(),
                got: params.len(),
            });
        }
        if let Some(&bad) = params.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("trainable parameter {bad}")));
        }
        let nq = self.quantum_weights.param_count();
        self.quantum_weights.as_mut_slice().copy_from_slice(&params[..nq]);
        let head = self.dense.last_mut().expect("validated");
        let nw = head.weights.len();
        head.weights.copy_from_slice(&params[nq..nq + nw]);
        head.bias.copy_from_slice(&params[nq + nw..]);
        Ok(())
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            architecture: self.layers.clone(),
            dense_weights: self
                .dense
                .iter()
                .enumerate()
                .map(|(i, d)| (format!("dense_{i}"), d.clone()))
                .collect(),
            quantum_weights: self.quantum_weights.clone(),
            seed: self.seed,
            preprocessing_artifact_ref: self.preprocessing_artifact_ref.clone(),
            background: self.background.clone(),
        }
    }

    pub fn from_file(file: ModelFile) -> Result<Self> {
        let mut dense = Vec::with_capacity(file.dense_weights.len());
        for i in 0..file.dense_weights.len() {
            let key = format!("dense_{i}");
            let layer = file
                .dense_weights
                .get(&key)
                .ok_or_else(|| Error::Architecture(format!("missing dense weights `{key}`")))?;
            dense.push(layer.clone());
        }
        let mut model =
            Self::from_parts(file.architecture, dense, file.quantum_weights, file.seed)?;
        model.preprocessing_artifact_ref = file.preprocessing_artifact_ref;
        if let Some(bg) = &file.background {
            if bg.len() != model.input_dim() {
                return Err(Error::DimensionMismatch {
                    expected: model.input_dim(),
                    got: bg.len(),
                });
            }
        }
        model.background = file.background;
        Ok(model)
    }
}

/// On-disk model layout. Dense weights are keyed `dense_<i>` in stack order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub architecture: Vec<LayerSpec>,
    pub dense_weights: BTreeMap<String, DenseLayer>,
    pub quantum_weights: SelWeights,
    pub seed: u64,
    pub preprocessing_artifact_ref: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub background: Option<Vec<f64>>,
}
