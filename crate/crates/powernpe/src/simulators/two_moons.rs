//! Two Moons simulator and its analytic likelihood.
//!
//! The simulator draws a point on a crescent (angle α uniform on
//! (−π/2, π/2), radius r ~ N(0.1, 0.01²), shifted by 0.25 along the first
//! axis) and then applies a θ-dependent offset whose first component contains
//! |θ₁+θ₂|, which folds the posterior into two mirror modes.

use crate::numeric::{normal_log_pdf, RngStream};
use std::f64::consts::{FRAC_PI_2, PI};

pub const RADIUS_MEAN: f64 = 0.1;
pub const RADIUS_SD: f64 = 0.01;
pub const CRESCENT_SHIFT: f64 = 0.25;

/// θ-dependent offset added to the crescent point.
#[inline]
pub fn offset(theta: &[f64]) -> [f64; 2] {
    let s = std::f64::consts::SQRT_2;
    [-(theta[0] + theta[1]).abs() / s, (-theta[0] + theta[1]) / s]
}

/// Deterministic simulator kernel for fixed (α, r).
pub fn simulate_with(theta: &[f64], alpha: f64, r: f64) -> Vec<f64> {
    let o = offset(theta);
    vec![r * alpha.cos() + CRESCENT_SHIFT + o[0], r * alpha.sin() + o[1]]
}

pub fn simulate(theta: &[f64], rng: &mut RngStream) -> Vec<f64> {
    let alpha = rng.uniform_in(-FRAC_PI_2, FRAC_PI_2);
    let r = rng.normal(RADIUS_MEAN, RADIUS_SD);
    simulate_with(theta, alpha, r)
}

/// Exact log p(x|θ) by the polar change of variables.
///
/// With v = x − offset(θ) and u = v − (0.25, 0), the crescent point has
/// radius ‖u‖ and angle in (−π/2, π/2), i.e. u_x > 0. On that half-plane the
/// density is N(‖u‖; 0.1, 0.01²) · (1/π) · (1/‖u‖); elsewhere it is zero.
pub fn log_likelihood(theta: &[f64], x: &[f64]) -> f64 {
    let o = offset(theta);
    let u = [x[0] - o[0] - CRESCENT_SHIFT, x[1] - o[1]];
    if u[0] <= 0.0 {
        return f64::NEG_INFINITY;
    }
    let r = (u[0] * u[0] + u[1] * u[1]).sqrt();
    if r < 1e-12 {
        return f64::NEG_INFINITY;
    }
    normal_log_pdf(r, RADIUS_MEAN, RADIUS_SD) - PI.ln() - r.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stubbed_draw_matches_hand_formula() {
        // α = 0, r = 0.1, θ = (0,0): x = (0.1 + 0.25 - 0, 0) = (0.35, 0)
        let x = simulate_with(&[0.0, 0.0], 0.0, 0.1);
        assert!((x[0] - 0.35).abs() < 1e-15);
        assert!(x[1].abs() < 1e-15);
    }

    #[test]
    fn forbidden_half_plane_is_zero_mass() {
        // u_x <= 0 after inverting the offset
        let theta = [0.2, 0.1];
        let o = offset(&theta);
        let x = [o[0] + CRESCENT_SHIFT - 0.05, o[1]];
        assert_eq!(log_likelihood(&theta, &x), f64::NEG_INFINITY);
    }

    #[test]
    fn density_integrates_to_one() {
        // Trapezoid integration over the u half-plane around the crescent.
        let theta = [0.3, -0.2];
        let o = offset(&theta);
        let step = 5e-4;
        let nx = 500usize; // u_x in (0, 0.25]
        let ny = 1000usize; // u_y in [-0.25, 0.25]
        let mut total = 0.0;
        for i in 0..=nx {
            let ux = 1e-9 + i as f64 * step;
            let wi = if i == 0 || i == nx { 0.5 } else { 1.0 };
            for j in 0..=ny {
                let uy = -0.25 + j as f64 * step;
                let wj = if j == 0 || j == ny { 0.5 } else { 1.0 };
                let x = [ux + CRESCENT_SHIFT + o[0], uy + o[1]];
                total += wi * wj * log_likelihood(&theta, &x).exp();
            }
        }
        total *= step * step;
        assert!((total - 1.0).abs() < 0.01, "integral {total}");
    }

    #[test]
    fn likelihood_is_even_in_the_fold() {
        // |θ₁+θ₂| makes p(x|θ) invariant under (θ₁,θ₂) -> (-θ₂,-θ₁).
        let x = [0.2, -0.1];
        let a = log_likelihood(&[0.4, 0.3], &x);
        let b = log_likelihood(&[-0.3, -0.4], &x);
        assert!((a - b).abs() < 1e-12);
    }
}
