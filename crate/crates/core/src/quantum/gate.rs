use num_complex::Complex64;

use super::state::StateVector;
use crate::error::{Error, Result};

/// Gates used by the ansatz.
///
/// `Rot { phi, theta, omega }` is `R_Z(omega)·R_Y(theta)·R_Z(phi)`, i.e. the
/// `R_Z(phi)` factor acts first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Ry { qubit: usize, theta: f64 },
    Rz { qubit: usize, theta: f64 },
    Rot {
        qubit: usize,
        phi: f64,
        theta: f64,
        omega: f64,
    },
    Cnot { control: usize, target: usize },
    Cz { a: usize, b: usize },
}

type Mat2 = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ry(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
}

fn rz(theta: f64) -> Mat2 {
    let half = theta / 2.0;
    [
        [Complex64::from_polar(1.0, -half), c(0.0, 0.0)],
        [c(0.0, 0.0), Complex64::from_polar(1.0, half)],
    ]
}

fn matmul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Ry { qubit, .. } | Gate::Rz { qubit, .. } | Gate::Rot { qubit, .. } => {
                vec![qubit]
            }
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Cz { a, b } => vec![a, b],
        }
    }

    pub fn angles(&self) -> Vec<f64> {
        match *self {
            Gate::Ry { theta, .. } | Gate::Rz { theta, .. } => vec![theta],
            Gate::Rot {
                phi, theta, omega, ..
            } => vec![phi, theta, omega],
            Gate::Cnot { .. } | Gate::Cz { .. } => vec![],
        }
    }

    /// 2×2 matrix of a single-qubit gate, `None` for two-qubit gates.
    pub fn single_qubit_matrix(&self) -> Option<Mat2> {
        match *self {
            Gate::Ry { theta, .. } => Some(ry(theta)),
            Gate::Rz { theta, .. } => Some(rz(theta)),
            Gate::Rot {
                phi, theta, omega, ..
            } => Some(matmul2(&rz(omega), &matmul2(&ry(theta), &rz(phi)))),
            Gate::Cnot { .. } | Gate::Cz { .. } => None,
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        if let Some(&bad) = self.angles().iter().find(|a| !a.is_finite()) {
            return Err(Error::NonFiniteAngle(bad));
        }
        let qubits = self.qubits();
        for &q in &qubits {
            if q >= n_qubits {
                return Err(Error::InvalidQubit { index: q, n_qubits });
            }
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::RepeatedQubit(qubits[0]));
        }
        Ok(())
    }

    /// Applies the gate in place.
    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        self.validate(state.n_qubits())?;
        if let Some(m) = self.single_qubit_matrix() {
            let qubit = self.qubits()[0];
            let mask = state.mask(qubit);
            let amps = state.amplitudes_mut();
            for i in 0..amps.len() {
                if i & mask == 0 {
                    let (a0, a1) = (amps[i], amps[i | mask]);
                    amps[i] = m[0][0] * a0 + m[0][1] * a1;
                    amps[i | mask] = m[1][0] * a0 + m[1][1] * a1;
                }
            }
            return Ok(());
        }
        match *self {
            Gate::Cnot { control, target } => {
                let (cm, tm) = (state.mask(control), state.mask(target));
                let amps = state.amplitudes_mut();
                for i in 0..amps.len() {
                    if i & cm != 0 && i & tm == 0 {
                        amps.swap(i, i | tm);
                    }
                }
            }
            Gate::Cz { a, b } => {
                let both = state.mask(a) | state.mask(b);
                for (i, amp) in state.amplitudes_mut().iter_mut().enumerate() {
                    if i & both == both {
                        *amp = -*amp;
                    }
                }
            }
            _ => unreachable!("single-qubit gates handled above"),
        }
        Ok(())
    }

    /// The gate's unitary on the full `n_qubits` register, built column by
    /// column from basis states (row-major `dim × dim`).
    pub fn expanded_matrix(&self, n_qubits: usize) -> Result<Vec<Vec<Complex64>>> {
        let dim = 1usize << n_qubits;
        let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
        for col in 0..dim {
            let mut s = StateVector::basis(n_qubits, col);
            self.apply(&mut s)?;
            for (row, a) in m.iter_mut().zip(s.amplitudes()) {
                row[col] = *a;
            }
        }
        Ok(m)
    }
}

/// `U|ψ⟩` as a new state.
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector> {
    let mut out = state.clone();
    gate.apply(&mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn ry_pi_flips_zero() {
        let s = apply_gate(&StateVector::zero(1), &Gate::Ry { qubit: 0, theta: PI }).unwrap();
        assert!(close(s.amplitudes()[0], c(0.0, 0.0)));
        assert!(close(s.amplitudes()[1], c(1.0, 0.0)));
    }

    #[test]
    fn cnot_truth_table() {
        // |10⟩ → |11⟩, |11⟩ → |10⟩, |0x⟩ fixed
        let g = Gate::Cnot {
            control: 0,
            target: 1,
        };
        for (input, output) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
            let s = apply_gate(&StateVector::basis(2, input), &g).unwrap();
            assert_eq!(s, StateVector::basis(2, output));
        }
    }

    #[test]
    fn cz_phases_only_11() {
        let g = Gate::Cz { a: 0, b: 1 };
        for i in 0..3 {
            assert_eq!(apply_gate(&StateVector::basis(2, i), &g).unwrap(), StateVector::basis(2, i));
        }
        let s = apply_gate(&StateVector::basis(2, 3), &g).unwrap();
        assert_eq!(s.amplitudes()[3], c(-1.0, 0.0));
    }

    #[test]
    fn rz_is_a_phase_on_zero() {
        let psi = 0.7;
        let s = apply_gate(&StateVector::zero(1), &Gate::Rz { qubit: 0, theta: psi }).unwrap();
        assert!(close(s.amplitudes()[0], Complex64::from_polar(1.0, -psi / 2.0)));
        assert!((s.amplitudes()[0].norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rot_zero_is_identity() {
        let m = Gate::Rot {
            qubit: 0,
            phi: 0.0,
            theta: 0.0,
            omega: 0.0,
        }
        .single_qubit_matrix()
        .unwrap();
        assert!(close(m[0][0], c(1.0, 0.0)) && close(m[1][1], c(1.0, 0.0)));
        assert!(close(m[0][1], c(0.0, 0.0)) && close(m[1][0], c(0.0, 0.0)));
    }

    #[test]
    fn invalid_gates_rejected() {
        let mut s = StateVector::zero(2);
        assert!(matches!(
            Gate::Ry { qubit: 2, theta: 0.1 }.apply(&mut s),
            Err(Error::InvalidQubit { index: 2, .. })
        ));
        assert!(matches!(
            Gate::Cnot { control: 1, target: 1 }.apply(&mut s),
            Err(Error::RepeatedQubit(1))
        ));
        assert!(matches!(
            Gate::Rz { qubit: 0, theta: f64::NAN }.apply(&mut s),
            Err(Error::NonFiniteAngle(_))
        ));
    }
}
