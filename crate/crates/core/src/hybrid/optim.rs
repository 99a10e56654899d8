use crate::error::{Error, Result};

pub const ADAM_BETA1: f64 = 0.9;
pub const ADAM_BETA2: f64 = 0.999;
pub const ADAM_EPSILON: f64 = 1e-8;

/// First/second moment estimates and the step counter.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub m: Vec<f64>,
    pub v: Vec<f64>,
    pub t: u64,
}

impl AdamState {
    pub fn new(n: usize) -> Self {
        Self {
            m: vec![0.0; n],
            v: vec![0.0; n],
            t: 0,
        }
    }
}

/// One bias-corrected Adam update; advances `state.t`.
pub fn adam_step(params: &mut [f64], grads: &[f64], state: &mut AdamState, lr: f64) -> Result<()> {
    if grads.len() != params.len() {
        return Err(Error::DimensionMismatch {
            expected: params.len(),
            got: grads.len(),
        });
    }
    if state.m.len() != params.len() || state.v.len() != params.len() {
        return Err(Error::DimensionMismatch {
            expected: params.len(),
            got: state.m.len(),
        });
    }
    state.t += 1;
    let t = state.t as i32;
    let c1 = 1.0 - ADAM_BETA1.powi(t);
    let c2 = 1.0 - ADAM_BETA2.powi(t);
    for i in 0..params.len() {
        let g = grads[i];
        state.m[i] = ADAM_BETA1 * state.m[i] + (1.0 - ADAM_BETA1) * g;
        state.v[i] = ADAM_BETA2 * state.v[i] + (1.0 - ADAM_BETA2) * g * g;
        let m_hat = state.m[i] / c1;
        let v_hat = state.v[i] / c2;
        params[i] -= lr * m_hat / (v_hat.sqrt() + ADAM_EPSILON);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_step_moves_by_lr() {
        for g in [0.3, -2.0, 1e-3] {
            let mut p = [1.0];
            let mut s = AdamState::new(1);
            adam_step(&mut p, &[g], &mut s, 0.01).unwrap();
            // m̂ = g, v̂ = g² ⇒ Δ = lr·g/(|g| + ε)
            let expected = 1.0 - 0.01 * g / (g.abs() + ADAM_EPSILON);
            assert!((p[0] - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_gradient_is_a_no_op() {
        let mut p = [0.25, -3.0];
        let mut s = AdamState::new(2);
        adam_step(&mut p, &[0.0, 0.0], &mut s, 0.1).unwrap();
        assert_eq!(p, [0.25, -3.0]);
    }

    #[test]
    fn constant_gradient_second_step() {
        let g = 0.5;
        let mut p = [0.0];
        let mut s = AdamState::new(1);
        adam_step(&mut p, &[g], &mut s, 0.01).unwrap();
        let after_one = p[0];
        adam_step(&mut p, &[g], &mut s, 0.01).unwrap();
        // m₂ = 0.19g, v₂ = 0.001999g²; bias corrections 0.19 and 0.001999 give m̂=g, v̂=g²
        let second = p[0] - after_one;
        assert!((second + 0.01 * g / (g + ADAM_EPSILON)).abs() < 1e-12);
    }

    #[test]
    fn shape_mismatch() {
        let mut p = [0.0; 2];
        assert!(adam_step(&mut p, &[1.0], &mut AdamState::new(2), 0.1).is_err());
    }
}
