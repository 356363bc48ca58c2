//! Gaussian mixture simulator: x | θ ~ ½ N(θ, I₂) + ½ N(θ, 0.01 I₂).

use crate::numeric::{logsumexp, normal_log_pdf, RngStream};

pub const WIDE_SD: f64 = 1.0;
pub const NARROW_SD: f64 = 0.1; // 0.01 I covariance

/// Deterministic kernel: pick a component and inject the standard-normal draw.
pub fn simulate_with(theta: &[f64], wide: bool, eps: &[f64; 2]) -> Vec<f64> {
    let sd = if wide { WIDE_SD } else { NARROW_SD };
    vec![theta[0] + sd * eps[0], theta[1] + sd * eps[1]]
}

pub fn simulate(theta: &[f64], rng: &mut RngStream) -> Vec<f64> {
    let wide = rng.uniform() < 0.5;
    let eps = [rng.standard_normal(), rng.standard_normal()];
    simulate_with(theta, wide, &eps)
}

/// log(½ N(x; θ, I) + ½ N(x; θ, 0.01 I)).
pub fn log_likelihood(theta: &[f64], x: &[f64]) -> f64 {
    let half = 0.5_f64.ln();
    let wide = half
        + normal_log_pdf(x[0], theta[0], WIDE_SD)
        + normal_log_pdf(x[1], theta[1], WIDE_SD);
    let narrow = half
        + normal_log_pdf(x[0], theta[0], NARROW_SD)
        + normal_log_pdf(x[1], theta[1], NARROW_SD);
    logsumexp(&[wide, narrow]).expect("two finite terms")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::mean_and_variance;

    #[test]
    fn wide_component_reduces_to_shifted_normal() {
        let eps = [0.7, -1.3];
        let x = simulate_with(&[0.2, -0.5], true, &eps);
        assert_eq!(x, vec![0.2 + 0.7, -0.5 - 1.3]);
    }

    #[test]
    fn mode_value_matches_direct_evaluation() {
        // θ = x: log(½ N(0;0,I₂) + ½ N(0;0,0.01 I₂)) with 2-D densities.
        let got = log_likelihood(&[0.3, 0.3], &[0.3, 0.3]);
        let wide = 0.5 * (1.0 / (2.0 * std::f64::consts::PI));
        let narrow = 0.5 * (1.0 / (2.0 * std::f64::consts::PI * 0.01));
        assert!((got - (wide + narrow).ln()).abs() < 1e-12);
    }

    #[test]
    fn simulator_matches_analytic_moments() {
        // Mixture mean is θ; per-coordinate variance ½·1 + ½·0.01 = 0.505.
        let theta = [0.25, -0.4];
        let mut rng = RngStream::new(77, 0);
        let n = 100_000;
        let mut xs0 = Vec::with_capacity(n);
        let mut xs1 = Vec::with_capacity(n);
        for _ in 0..n {
            let x = simulate(&theta, &mut rng);
            xs0.push(x[0]);
            xs1.push(x[1]);
        }
        for (xs, t) in [(xs0, theta[0]), (xs1, theta[1])] {
            let (m, v) = mean_and_variance(&xs);
            let se_mean = (0.505_f64 / n as f64).sqrt();
            assert!((m - t).abs() < 3.0 * se_mean, "mean {m} vs {t}");
            // variance of the variance estimator ≈ (E[x⁴]-v²)/n; loose 3-SE bound
            assert!((v - 0.505).abs() < 0.02, "variance {v}");
        }
    }
}
