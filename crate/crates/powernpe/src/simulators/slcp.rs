//! SLCP: simple likelihood, complex posterior.
//!
//! Four i.i.d. bivariate normal observations with mean (θ₁, θ₂) and a
//! covariance built from s₁ = θ₃², s₂ = θ₄², ρ = tanh θ₅. The squares and the
//! tanh make the 5-D posterior multimodal and curved while the likelihood
//! stays closed-form.

use crate::numeric::{RngStream, LN_2PI};

pub const NUM_PAIRS: usize = 4;

/// Scale floor: the prior includes θ₃ = 0 / θ₄ = 0, which would make the
/// covariance singular.
pub const SCALE_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy)]
pub struct SlcpParams {
    pub mean: [f64; 2],
    pub s1: f64,
    pub s2: f64,
    pub rho: f64,
}

pub fn params(theta: &[f64]) -> SlcpParams {
    SlcpParams {
        mean: [theta[0], theta[1]],
        s1: (theta[2] * theta[2]).max(SCALE_FLOOR),
        s2: (theta[3] * theta[3]).max(SCALE_FLOOR),
        rho: theta[4].tanh(),
    }
}

pub fn simulate(theta: &[f64], rng: &mut RngStream) -> Vec<f64> {
    let p = params(theta);
    let mut x = Vec::with_capacity(2 * NUM_PAIRS);
    for _ in 0..NUM_PAIRS {
        let z1 = rng.standard_normal();
        let z2 = rng.standard_normal();
        x.push(p.mean[0] + p.s1 * z1);
        x.push(p.mean[1] + p.s2 * (p.rho * z1 + (1.0 - p.rho * p.rho).sqrt() * z2));
    }
    x
}

/// Sum of four bivariate normal log-densities.
pub fn log_likelihood(theta: &[f64], x: &[f64]) -> f64 {
    let p = params(theta);
    let one_minus_r2 = (1.0 - p.rho * p.rho).max(1e-15);
    let log_det = 2.0 * p.s1.ln() + 2.0 * p.s2.ln() + one_minus_r2.ln();
    let mut total = 0.0;
    for i in 0..NUM_PAIRS {
        let d1 = (x[2 * i] - p.mean[0]) / p.s1;
        let d2 = (x[2 * i + 1] - p.mean[1]) / p.s2;
        let quad = (d1 * d1 - 2.0 * p.rho * d1 * d2 + d2 * d2) / one_minus_r2;
        total += -LN_2PI - 0.5 * log_det - 0.5 * quad;
    }
    total
}
