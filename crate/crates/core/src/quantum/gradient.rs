use std::f64::consts::FRAC_PI_2;

use super::circuit::{all_expectations, sel_circuit, SelWeights};
use super::state::{amplitude_embed, StateVector};
use crate::error::{Error, Result};

fn shifted_expectations(
    embedded: &StateVector,
    weights: &SelWeights,
    param: usize,
    shift: f64,
) -> Result<Vec<f64>> {
    let mut w = weights.clone();
    w.as_mut_slice()[param] += shift;
    Ok(all_expectations(&sel_circuit(embedded, &w)?))
}

/// Parameter-shift Jacobian of every qubit's `⟨σ_z⟩` with respect to every
/// circuit angle: `jac[q][k] = ∂⟨σ_z^q⟩/∂θ_k`.
///
/// Each angle enters through a single `R_Y`/`R_Z` rotation, so the two-term
/// shift rule with `±π/2` is exact.
pub fn param_shift_jacobian(inputs: &[f64], weights: &SelWeights) -> Result<Vec<Vec<f64>>> {
    let dim = 1usize << weights.n_qubits();
    if inputs.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: inputs.len(),
        });
    }
    let embedded = amplitude_embed(inputs, weights.n_qubits())?;
    let n = weights.n_qubits();
    let mut jac = vec![vec![0.0; weights.param_count()]; n];
    for k in 0..weights.param_count() {
        let plus = shifted_expectations(&embedded, weights, k, FRAC_PI_2)?;
        let minus = shifted_expectations(&embedded, weights, k, -FRAC_PI_2)?;
        for (q, row) in jac.iter_mut().enumerate() {
            row[k] = (plus[q] - minus[q]) / 2.0;
        }
    }
    Ok(jac)
}

/// Gradient of `⟨σ_z^qubit⟩` shaped like `weights`.
pub fn param_shift_grad(inputs: &[f64], weights: &SelWeights, qubit: usize) -> Result<SelWeights> {
    if qubit >= weights.n_qubits() {
        return Err(Error::InvalidQubit {
            index: qubit,
            n_qubits: weights.n_qubits(),
        });
    }
    let mut jac = param_shift_jacobian(inputs, weights)?;
    let row = jac.swap_remove(qubit);
    SelWeights::from_flat(weights.layers(), weights.n_qubits(), row)
}
