//! Adam optimizer over flat parameter buffers.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdamState {
    first_moment: Vec<f64>,
    second_moment: Vec<f64>,
    step: u64,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl AdamState {
    pub fn new(param_count: usize, learning_rate: f64) -> Self {
        AdamState {
            first_moment: vec![0.0; param_count],
            second_moment: vec![0.0; param_count],
            step: 0,
            learning_rate,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }
}

/// One Adam update with bias correction. Deterministic; shapes must agree.
pub fn adam_step(state: &mut AdamState, params: &mut [f64], grads: &[f64]) -> Result<()> {
    if params.len() != state.first_moment.len() || grads.len() != params.len() {
        return Err(Error::invalid("adam_step shape mismatch"));
    }
    state.step += 1;
    let t = state.step as i32;
    let bc1 = 1.0 - state.beta1.powi(t);
    let bc2 = 1.0 - state.beta2.powi(t);
    for i in 0..params.len() {
        let g = grads[i];
        let m = &mut state.first_moment[i];
        *m = state.beta1 * *m + (1.0 - state.beta1) * g;
        let v = &mut state.second_moment[i];
        *v = state.beta2 * *v + (1.0 - state.beta2) * g * g;
        let m_hat = *m / bc1;
        let v_hat = *v / bc2;
        params[i] -= state.learning_rate * m_hat / (v_hat.sqrt() + state.epsilon);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_leaves_params_unchanged() {
        let mut st = AdamState::new(3, 1e-3);
        let mut params = vec![1.0, -2.0, 0.5];
        adam_step(&mut st, &mut params, &[0.0; 3]).unwrap();
        assert_eq!(params, vec![1.0, -2.0, 0.5]);
    }

    #[test]
    fn first_step_is_sign_like() {
        // After bias correction the first update is -lr * g / (|g| + eps).
        let mut st = AdamState::new(2, 0.01);
        let mut params = vec![0.0, 0.0];
        let grads = [3.0, -0.2];
        adam_step(&mut st, &mut params, &grads).unwrap();
        for i in 0..2 {
            let expect = -0.01 * grads[i] / (grads[i].abs() + st.epsilon);
            assert!((params[i] - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn deterministic_across_replays() {
        let run = || {
            let mut st = AdamState::new(4, 3e-3);
            let mut params = vec![0.1, 0.2, 0.3, 0.4];
            for k in 0..57 {
                let g: Vec<f64> = (0..4).map(|i| ((k * 4 + i) as f64 * 0.37).sin()).collect();
                adam_step(&mut st, &mut params, &g).unwrap();
            }
            params
        };
        let a = run();
        let b = run();
        assert_eq!(
            a.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            b.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn shape_mismatch_rejected() {
        let mut st = AdamState::new(3, 1e-3);
        let mut params = vec![0.0; 2];
        assert!(adam_step(&mut st, &mut params, &[0.0; 2]).is_err());
    }
}
