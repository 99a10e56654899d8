//! Exact dense-statevector simulation of the variational circuit.
//!
//! Qubit 0 is the most significant bit of a basis index, so the two-qubit
//! basis `|q0 q1⟩` lives at index `2·q0 + q1`.

mod circuit;
mod gate;
mod gradient;
mod state;

pub use circuit::{
    class_probabilities, quantum_layer_expectations, quantum_layer_forward, sel_circuit,
    PredictionProbabilities, SelWeights,
};
pub use gate::{apply_gate, Gate};
pub use gradient::{param_shift_grad, param_shift_jacobian};
pub use state::{amplitude_embed, expectation_z, StateVector};

pub use num_complex::Complex64;
