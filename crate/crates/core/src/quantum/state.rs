use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Amplitudes of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let dim = 1usize << n_qubits;
        assert!(index < dim, "basis index {index} out of range");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self {
            n_qubits,
            amplitudes,
        }
    }

    /// Wraps raw amplitudes. The vector length must be a power of two; the
    /// caller is responsible for normalisation.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: dim.next_power_of_two().max(1),
                got: dim,
            });
        }
        Ok(Self {
            n_qubits: dim.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Bit mask of `qubit` inside a basis index.
    pub(crate) fn mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    pub(crate) fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            Err(Error::InvalidQubit {
                index: qubit,
                n_qubits: self.n_qubits,
            })
        } else {
            Ok(())
        }
    }

    /// Basis label such as `|01⟩` for index 1 of a two-qubit register.
    pub fn basis_label(&self, index: usize) -> String {
        format!("|{:0width$b}⟩", index, width = self.n_qubits)
    }
}

/// One `index basis-label re im prob` row per amplitude.
impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.amplitudes.iter().enumerate() {
            writeln!(
                f,
                "{} {} {:.12} {:.12} {:.12}",
                i,
                self.basis_label(i),
                a.re,
                a.im,
                a.norm_sqr()
            )?;
        }
        Ok(())
    }
}

/// Loads `features` into the amplitudes of an `n_qubits` register.
///
/// The vector is zero-padded to `2^n_qubits` entries and divided by its
/// Euclidean norm.
pub fn amplitude_embed(features: &[f64], n_qubits: usize) -> Result<StateVector> {
    let dim = 1usize << n_qubits;
    if features.len() > dim {
        return Err(Error::TooManyFeatures {
            features: features.len(),
            n_qubits,
        });
    }
    if let Some(&bad) = features.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("embedding input {bad}")));
    }
    let norm = features.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    for (a, &v) in amplitudes.iter_mut().zip(features) {
        *a = Complex64::new(v / norm, 0.0);
    }
    Ok(StateVector {
        n_qubits,
        amplitudes,
    })
}

/// `⟨σ_z⟩` on `qubit`: `+1` weight where the qubit's bit is 0, `−1` where it is 1.
pub fn expectation_z(state: &StateVector, qubit: usize) -> Result<f64> {
    state.check_qubit(qubit)?;
    let mask = state.mask(qubit);
    Ok(state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let p = a.norm_sqr();
            if i & mask == 0 {
                p
            } else {
                -p
            }
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(state: &StateVector) -> Vec<f64> {
        state.amplitudes().iter().map(|a| a.re).collect()
    }

    #[test]
    fn embed_examples() {
        assert_eq!(re(&amplitude_embed(&[1.0, 0.0, 0.0, 0.0], 2).unwrap()), [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(re(&amplitude_embed(&[1.0, 1.0, 1.0, 1.0], 2).unwrap()), [0.5; 4]);
        assert_eq!(re(&amplitude_embed(&[3.0, 4.0], 2).unwrap()), [0.6, 0.8, 0.0, 0.0]);
        assert!(matches!(amplitude_embed(&[0.0; 4], 2), Err(Error::ZeroNorm)));
        assert!(matches!(
            amplitude_embed(&[1.0; 5], 2),
            Err(Error::TooManyFeatures { .. })
        ));
    }

    #[test]
    fn expectation_examples() {
        assert_eq!(expectation_z(&StateVector::zero(2), 0).unwrap(), 1.0);
        assert_eq!(expectation_z(&StateVector::basis(2, 2), 0).unwrap(), -1.0);
        assert_eq!(expectation_z(&StateVector::basis(2, 2), 1).unwrap(), 1.0);
        let plus = amplitude_embed(&[1.0; 4], 2).unwrap();
        assert_eq!(expectation_z(&plus, 0).unwrap(), 0.0);
        assert!(matches!(
            expectation_z(&plus, 2),
            Err(Error::InvalidQubit { index: 2, .. })
        ));
    }

    #[test]
    fn display_rows() {
        let s = StateVector::basis(2, 1).to_string();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("1 |01⟩ 1.000000000000 0.000000000000 1.000000000000"));
    }
}
