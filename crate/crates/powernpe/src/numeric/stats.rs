//! Log-domain primitives and small statistical helpers.

use crate::error::{Error, Result};
use crate::numeric::vector::{euclidean_distance, RealMatrix};

pub const LN_2PI: f64 = 1.8378770664093453;

/// log Σᵢ exp(vᵢ), stable under large negative or positive inputs.
///
/// Shift invariant: `logsumexp(v + c) = logsumexp(v) + c`.
pub fn logsumexp(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::invalid("logsumexp of empty input"));
    }
    let m = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    if !m.is_finite() {
        return Err(Error::numeric("logsumexp requires at least one finite value"));
    }
    let sum: f64 = values.iter().map(|v| (v - m).exp()).sum();
    Ok(m + sum.ln())
}

/// Log-density of a 1-D normal.
#[inline]
pub fn normal_log_pdf(v: f64, mean: f64, sd: f64) -> f64 {
    debug_assert!(sd > 0.0);
    let z = (v - mean) / sd;
    -0.5 * LN_2PI - sd.ln() - 0.5 * z * z
}

/// Log-density of a diagonal Gaussian with strictly positive variances.
pub fn gaussian_log_pdf_diag(v: &[f64], mean: &[f64], variances: &[f64]) -> Result<f64> {
    if v.len() != mean.len() || v.len() != variances.len() {
        return Err(Error::invalid("dimension mismatch in gaussian_log_pdf_diag"));
    }
    let mut acc = -0.5 * LN_2PI * v.len() as f64;
    for i in 0..v.len() {
        let var = variances[i];
        if !(var > 0.0) {
            return Err(Error::numeric("variance must be strictly positive"));
        }
        let d = v[i] - mean[i];
        acc -= 0.5 * (var.ln() + d * d / var);
    }
    Ok(acc)
}

/// Log-density of a full-covariance Gaussian via Cholesky.
pub fn gaussian_log_pdf_full(v: &[f64], mean: &[f64], cov: &RealMatrix) -> Result<f64> {
    let d = v.len();
    if mean.len() != d || cov.rows() != d || cov.cols() != d {
        return Err(Error::invalid("dimension mismatch in gaussian_log_pdf_full"));
    }
    let l = cov.cholesky()?;
    // Solve L z = (v - mean) by forward substitution.
    let mut z = vec![0.0; d];
    for i in 0..d {
        let mut s = v[i] - mean[i];
        for k in 0..i {
            s -= l.get(i, k) * z[k];
        }
        z[i] = s / l.get(i, i);
    }
    let quad: f64 = z.iter().map(|zi| zi * zi).sum();
    let log_det: f64 = (0..d).map(|i| l.get(i, i).ln()).sum::<f64>() * 2.0;
    Ok(-0.5 * (d as f64 * LN_2PI + log_det + quad))
}

/// Median of all pairwise Euclidean distances (lower median on ties/even
/// counts). Returns 0 for a duplicated point set; callers using this as a
/// kernel bandwidth must guard that case.
pub fn median_pairwise_distance(samples: &[Vec<f64>]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::invalid("median_pairwise_distance needs at least 2 samples"));
    }
    let mut dists = Vec::with_capacity(samples.len() * (samples.len() - 1) / 2);
    for i in 0..samples.len() {
        for j in (i + 1)..samples.len() {
            dists.push(euclidean_distance(&samples[i], &samples[j]));
        }
    }
    dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(dists[(dists.len() - 1) / 2])
}

/// Mean and (population) variance of a slice.
pub fn mean_and_variance(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logsumexp_basics() {
        assert!((logsumexp(&[0.0, 0.0]).unwrap() - 2.0_f64.ln()).abs() < 1e-15);
        // No underflow far below exp range.
        let v = logsumexp(&[-1000.0, -1000.0]).unwrap();
        assert!((v - (-1000.0 + 2.0_f64.ln())).abs() < 1e-12);
        // Direct sum at friendly magnitudes.
        let direct = (0.0_f64.exp() + 1.0_f64.exp() + 2.0_f64.exp()).ln();
        assert!((logsumexp(&[0.0, 1.0, 2.0]).unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn logsumexp_empty_rejected() {
        assert!(logsumexp(&[]).is_err());
    }

    #[test]
    fn logsumexp_overflow_safe() {
        let v = logsumexp(&[-1e6, -1e6 + 1.0]).unwrap();
        assert!(v.is_finite());
    }

    #[test]
    fn normal_log_pdf_standard_at_zero() {
        assert!((normal_log_pdf(0.0, 0.0, 1.0) + 0.5 * LN_2PI).abs() < 1e-15);
    }

    #[test]
    fn normal_log_pdf_hand_case() {
        // N(0, 4) at 2 -> -0.5 ln(8π) - 0.5
        let expect = -0.5 * (8.0 * std::f64::consts::PI).ln() - 0.5;
        assert!((normal_log_pdf(2.0, 0.0, 2.0) - expect).abs() < 1e-14);
    }

    #[test]
    fn full_cov_factorizes_when_uncorrelated() {
        let cov = RealMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 0.5]]).unwrap();
        let full = gaussian_log_pdf_full(&[0.3, -0.7], &[0.1, 0.2], &cov).unwrap();
        let sum_1d = normal_log_pdf(0.3, 0.1, 2.0_f64.sqrt()) + normal_log_pdf(-0.7, 0.2, 0.5_f64.sqrt());
        assert!((full - sum_1d).abs() < 1e-12);
    }

    #[test]
    fn non_pd_covariance_rejected() {
        let cov = RealMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(gaussian_log_pdf_full(&[0.0, 0.0], &[0.0, 0.0], &cov).is_err());
    }

    #[test]
    fn median_distance_cases() {
        // two points
        let s = vec![vec![0.0], vec![3.0]];
        assert_eq!(median_pairwise_distance(&s).unwrap(), 3.0);
        // collinear 0,1,3 -> distances {1,2,3}, median 2
        let s = vec![vec![0.0], vec![1.0], vec![3.0]];
        assert_eq!(median_pairwise_distance(&s).unwrap(), 2.0);
        // duplicated points -> 0
        let s = vec![vec![1.0, 1.0]; 4];
        assert_eq!(median_pairwise_distance(&s).unwrap(), 0.0);
    }
}
