use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gate::Gate;
use super::state::{amplitude_embed, expectation_z, StateVector};
use crate::error::{Error, Result};

/// Trainable angles of `layers` strongly-entangling layers on `n_qubits`.
///
/// Stored flat in `(layer, qubit, angle)` order, so the parameter index of
/// angle `k` on qubit `q` of layer `l` is `3·(l·n + q) + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SelWeights {
    layers: usize,
    n_qubits: usize,
    angles: Vec<f64>,
}

impl SelWeights {
    pub fn zeros(layers: usize, n_qubits: usize) -> Self {
        assert!(layers > 0 && n_qubits > 0, "layers and qubits must be positive");
        Self {
            layers,
            n_qubits,
            angles: vec![0.0; 3 * layers * n_qubits],
        }
    }

    /// Angles drawn uniformly from `[0, 2π)`.
    pub fn random<R: Rng + ?Sized>(layers: usize, n_qubits: usize, rng: &mut R) -> Self {
        let mut w = Self::zeros(layers, n_qubits);
        for a in &mut w.angles {
            *a = rng.gen_range(0.0..std::f64::consts::TAU);
        }
        w
    }

    pub fn from_flat(layers: usize, n_qubits: usize, angles: Vec<f64>) -> Result<Self> {
        if layers == 0 || n_qubits == 0 {
            return Err(Error::Config("SEL needs at least one layer and one qubit".into()));
        }
        if angles.len() != 3 * layers * n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 3 * layers * n_qubits,
                got: angles.len(),
            });
        }
        if let Some(&bad) = angles.iter().find(|a| !a.is_finite()) {
            return Err(Error::NonFiniteAngle(bad));
        }
        Ok(Self {
            layers,
            n_qubits,
            angles,
        })
    }

    pub fn from_nested(nested: &[Vec<[f64; 3]>]) -> Result<Self> {
        let layers = nested.len();
        let n_qubits = nested.first().map_or(0, Vec::len);
        if nested.iter().any(|l| l.len() != n_qubits) {
            return Err(Error::Config("ragged SEL angle tensor".into()));
        }
        let flat = nested.iter().flatten().flatten().copied().collect();
        Self::from_flat(layers, n_qubits, flat)
    }

    pub fn to_nested(&self) -> Vec<Vec<[f64; 3]>> {
        self.angles
            .chunks(3 * self.n_qubits)
            .map(|layer| layer.chunks(3).map(|a| [a[0], a[1], a[2]]).collect())
            .collect()
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn param_count(&self) -> usize {
        self.angles.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.angles
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.angles
    }

    pub fn angle(&self, layer: usize, qubit: usize) -> [f64; 3] {
        let i = 3 * (layer * self.n_qubits + qubit);
        [self.angles[i], self.angles[i + 1], self.angles[i + 2]]
    }

    /// Gate sequence of the ansatz: per layer, one `Rot` per qubit then a
    /// ring of CNOTs `(q, q+1 mod n)`. A single qubit has no ring.
    pub fn gates(&self) -> Vec<Gate> {
        let n = self.n_qubits;
        let mut gates = Vec::with_capacity(self.layers * 2 * n);
        for l in 0..self.layers {
            for q in 0..n {
                let [phi, theta, omega] = self.angle(l, q);
                gates.push(Gate::Rot {
                    qubit: q,
                    phi,
                    theta,
                    omega,
                });
            }
            if n > 1 {
                for q in 0..n {
                    gates.push(Gate::Cnot {
                        control: q,
                        target: (q + 1) % n,
                    });
                }
            }
        }
        gates
    }
}

#[derive(Serialize, Deserialize)]
struct SelWeightsRepr {
    n_qubits: usize,
    layers: usize,
    angles: Vec<Vec<[f64; 3]>>,
}

impl Serialize for SelWeights {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SelWeightsRepr {
            n_qubits: self.n_qubits,
            layers: self.layers,
            angles: self.to_nested(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SelWeights {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SelWeightsRepr::deserialize(deserializer)?;
        let w = SelWeights::from_nested(&repr.angles).map_err(serde::de::Error::custom)?;
        if w.n_qubits != repr.n_qubits || w.layers != repr.layers {
            return Err(serde::de::Error::custom(format!(
                "declared shape {}x{} does not match angle tensor {}x{}",
                repr.layers, repr.n_qubits, w.layers, w.n_qubits
            )));
        }
        Ok(w)
    }
}

/// Runs the strongly-entangling layers on `state`.
pub fn sel_circuit(state: &StateVector, weights: &SelWeights) -> Result<StateVector> {
    if state.n_qubits() != weights.n_qubits {
        return Err(Error::QubitMismatch {
            state: state.n_qubits(),
            weights: weights.n_qubits,
        });
    }
    let mut out = state.clone();
    for gate in weights.gates() {
        gate.apply(&mut out)?;
    }
    Ok(out)
}

/// Readout probabilities derived from `⟨σ_z⟩` of qubit 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictionProbabilities {
    pub p_not_backorder: f64,
    pub p_backorder: f64,
}

pub fn class_probabilities(expectation: f64) -> Result<PredictionProbabilities> {
    if !(-1.0 - 1e-9..=1.0 + 1e-9).contains(&expectation) || expectation.is_nan() {
        return Err(Error::ExpectationOutOfRange(expectation));
    }
    let p_not_backorder = ((expectation + 1.0) / 2.0).clamp(0.0, 1.0);
    Ok(PredictionProbabilities {
        p_not_backorder,
        p_backorder: 1.0 - p_not_backorder,
    })
}

/// Pauli-Z expectation of every qubit of `state`.
pub(crate) fn all_expectations(state: &StateVector) -> Vec<f64> {
    (0..state.n_qubits())
        .map(|q| expectation_z(state, q).expect("qubit in range"))
        .collect()
}

/// Embed → SEL → per-qubit `⟨σ_z⟩`, returning the evolved state as well.
pub fn quantum_layer_expectations(
    inputs: &[f64],
    weights: &SelWeights,
) -> Result<(StateVector, StateVector, Vec<f64>)> {
    let dim = 1usize << weights.n_qubits;
    if inputs.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: inputs.len(),
        });
    }
    let embedded = amplitude_embed(inputs, weights.n_qubits)?;
    let evolved = sel_circuit(&embedded, weights)?;
    let z = all_expectations(&evolved);
    Ok((embedded, evolved, z))
}

/// Quantum layer: `2^n` reals in, `n` Pauli-Z expectations out.
pub fn quantum_layer_forward(inputs: &[f64], weights: &SelWeights) -> Result<Vec<f64>> {
    quantum_layer_expectations(inputs, weights).map(|(_, _, z)| z)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn parameter_count_is_three_n_l() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for l in 1..4 {
            for n in 1..5 {
                assert_eq!(SelWeights::zeros(l, n).param_count(), 3 * n * l);
                assert_eq!(SelWeights::random(l, n, &mut rng).param_count(), 3 * n * l);
            }
        }
    }

    #[test]
    fn zero_weights_on_basis_states() {
        let w = SelWeights::zeros(1, 2);
        assert_eq!(sel_circuit(&StateVector::zero(2), &w).unwrap(), StateVector::zero(2));
        // |10⟩ → CNOT(0,1) → |11⟩ → CNOT(1,0) → |01⟩
        assert_eq!(
            sel_circuit(&StateVector::basis(2, 2), &w).unwrap(),
            StateVector::basis(2, 1)
        );
    }

    #[test]
    fn layer_forward_examples() {
        let w = SelWeights::zeros(1, 2);
        assert_eq!(quantum_layer_forward(&[1.0, 0.0, 0.0, 0.0], &w).unwrap(), [1.0, 1.0]);
        assert_eq!(quantum_layer_forward(&[0.0, 0.0, 1.0, 0.0], &w).unwrap(), [1.0, -1.0]);
        assert!(matches!(
            quantum_layer_forward(&[1.0, 0.0], &w),
            Err(Error::DimensionMismatch { expected: 4, got: 2 })
        ));
    }

    #[test]
    fn qubit_mismatch_rejected() {
        assert!(matches!(
            sel_circuit(&StateVector::zero(3), &SelWeights::zeros(1, 2)),
            Err(Error::QubitMismatch { state: 3, weights: 2 })
        ));
    }

    #[test]
    fn class_probability_examples() {
        let p = class_probabilities(1.0).unwrap();
        assert_eq!((p.p_not_backorder, p.p_backorder), (1.0, 0.0));
        let p = class_probabilities(0.0).unwrap();
        assert_eq!((p.p_not_backorder, p.p_backorder), (0.5, 0.5));
        let p = class_probabilities(-1.0).unwrap();
        assert_eq!((p.p_not_backorder, p.p_backorder), (0.0, 1.0));
        assert!(class_probabilities(1.1).is_err());
        assert!(class_probabilities(f64::NAN).is_err());
    }

    #[test]
    fn json_shape() {
        let w = SelWeights::from_flat(1, 2, vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6]).unwrap();
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(
            json,
            r#"{"n_qubits":2,"layers":1,"angles":[[[0.1,0.2,0.3],[0.4,0.5,0.6]]]}"#
        );
        let back: SelWeights = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
        let bad = r#"{"n_qubits":3,"layers":1,"angles":[[[0.1,0.2,0.3],[0.4,0.5,0.6]]]}"#;
        assert!(serde_json::from_str::<SelWeights>(bad).is_err());
    }
}
