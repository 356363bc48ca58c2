//! Benchmark priors, simulators, and analytic log-likelihoods.
//!
//! Four tasks: Two Moons and a two-component Gaussian mixture (2-D θ and x),
//! SLCP (5-D θ, 8-D x), and a stochastic Lorenz-96 system (3-D θ, flattened
//! trajectory x). Each task exposes `simulate` and an exact `log_likelihood`,
//! so reference samplers can target the power posterior directly.

pub mod gaussian_mixture;
pub mod lorenz96;
pub mod slcp;
pub mod two_moons;

use crate::error::{Error, Result};
use crate::numeric::{RealVector, RngStream};
use serde::{Deserialize, Serialize};

/// Uniform box prior with per-dimension bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxPrior {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxPrior {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::invalid("prior bounds must have equal, positive length"));
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l < u)) {
            return Err(Error::invalid("prior requires lower < upper in every dimension"));
        }
        Ok(BoxPrior { lower, upper })
    }

    /// The same bound in every dimension.
    pub fn symmetric(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        BoxPrior::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self, i: usize) -> f64 {
        self.lower[i]
    }

    pub fn upper(&self, i: usize) -> f64 {
        self.upper[i]
    }

    pub fn width(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }

    pub fn midpoint(&self, i: usize) -> f64 {
        0.5 * (self.lower[i] + self.upper[i])
    }

    pub fn contains(&self, theta: &[f64]) -> bool {
        theta.len() == self.dim()
            && theta
                .iter()
                .enumerate()
                .all(|(i, &t)| t >= self.lower[i] && t <= self.upper[i])
    }

    /// Constant inside the box, −∞ outside.
    pub fn log_pdf(&self, theta: &[f64]) -> f64 {
        if !self.contains(theta) {
            return f64::NEG_INFINITY;
        }
        -(0..self.dim()).map(|i| self.width(i).ln()).sum::<f64>()
    }

    /// Gradient of the log-density; zero everywhere in the interior (and by
    /// convention on the boundary, where reflection handles the constraint).
    pub fn grad_log_pdf(&self, _theta: &[f64]) -> Vec<f64> {
        vec![0.0; self.dim()]
    }

    pub fn sample(&self, rng: &mut RngStream) -> Vec<f64> {
        (0..self.dim()).map(|i| rng.uniform_in(self.lower[i], self.upper[i])).collect()
    }

    /// Mirrors a scalar into `[lower_i, upper_i]` (triangle-wave fold).
    pub fn reflect_coordinate(&self, i: usize, value: f64) -> f64 {
        reflect_into(value, self.lower[i], self.upper[i])
    }

    /// Reflects every coordinate of `theta` into the box, in place.
    pub fn reflect(&self, theta: &mut [f64]) {
        for (i, t) in theta.iter_mut().enumerate() {
            *t = reflect_into(*t, self.lower[i], self.upper[i]);
        }
    }
}

/// Mirror `x` into `[lo, hi]` by repeated reflection at the endpoints.
pub fn reflect_into(x: f64, lo: f64, hi: f64) -> f64 {
    let width = hi - lo;
    let period = 2.0 * width;
    let mut t = (x - lo) % period;
    if t < 0.0 {
        t += period;
    }
    let folded = if t > width { period - t } else { t };
    lo + folded
}

/// Benchmark identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    TwoMoons,
    GaussianMixture,
    Slcp,
    Lorenz96,
}

impl TaskKind {
    pub const ALL: [TaskKind; 4] =
        [TaskKind::TwoMoons, TaskKind::GaussianMixture, TaskKind::Slcp, TaskKind::Lorenz96];

    pub fn name(&self) -> &'static str {
        match self {
            TaskKind::TwoMoons => "two-moons",
            TaskKind::GaussianMixture => "gaussian-mixture",
            TaskKind::Slcp => "slcp",
            TaskKind::Lorenz96 => "lorenz96",
        }
    }

    pub fn parse(s: &str) -> Result<TaskKind> {
        match s {
            "two-moons" => Ok(TaskKind::TwoMoons),
            "gaussian-mixture" => Ok(TaskKind::GaussianMixture),
            "slcp" => Ok(TaskKind::Slcp),
            "lorenz96" => Ok(TaskKind::Lorenz96),
            other => Err(Error::invalid(format!(
                "unknown task '{other}' (expected two-moons | gaussian-mixture | slcp | lorenz96)"
            ))),
        }
    }
}

impl std::fmt::Display for TaskKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Fixed constants of the Lorenz-96 system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lorenz96Constants {
    /// State dimension.
    pub k: usize,
    /// Euler–Maruyama time step.
    pub dt: f64,
    /// Number of transitions; the observation holds states 0..=T.
    pub t: usize,
}

pub const LORENZ96_CONSTANTS: Lorenz96Constants = Lorenz96Constants { k: 8, dt: 3.0 / 40.0, t: 20 };

/// A benchmark task: prior, dimensions, and fixed constants.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchmarkTask {
    kind: TaskKind,
    prior: BoxPrior,
    theta_dim: usize,
    x_dim: usize,
    lorenz: Option<Lorenz96Constants>,
}

impl BenchmarkTask {
    pub fn new(kind: TaskKind) -> Self {
        match kind {
            TaskKind::TwoMoons | TaskKind::GaussianMixture => BenchmarkTask {
                kind,
                prior: BoxPrior::symmetric(2, -1.0, 1.0).unwrap(),
                theta_dim: 2,
                x_dim: 2,
                lorenz: None,
            },
            TaskKind::Slcp => BenchmarkTask {
                kind,
                prior: BoxPrior::symmetric(5, -3.0, 3.0).unwrap(),
                theta_dim: 5,
                x_dim: 8,
                lorenz: None,
            },
            TaskKind::Lorenz96 => {
                let c = LORENZ96_CONSTANTS;
                BenchmarkTask {
                    kind,
                    prior: BoxPrior::new(vec![1.4, 0.1, 1.5], vec![2.2, 1.0, 2.5]).unwrap(),
                    theta_dim: 3,
                    x_dim: (c.t + 1) * c.k,
                    lorenz: Some(c),
                }
            }
        }
    }

    pub fn kind(&self) -> TaskKind {
        self.kind
    }

    pub fn prior(&self) -> &BoxPrior {
        &self.prior
    }

    pub fn theta_dim(&self) -> usize {
        self.theta_dim
    }

    pub fn x_dim(&self) -> usize {
        self.x_dim
    }

    pub fn lorenz_constants(&self) -> Option<Lorenz96Constants> {
        self.lorenz
    }
}

/// A (θ, x) pair drawn from prior × simulator: the universal training record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointSample {
    pub theta: RealVector,
    pub x: RealVector,
}

/// Uniform draw from the prior box.
pub fn prior_sample(prior: &BoxPrior, rng: &mut RngStream) -> Vec<f64> {
    prior.sample(rng)
}

/// Runs the task simulator at `theta`.
pub fn simulate(task: &BenchmarkTask, theta: &[f64], rng: &mut RngStream) -> Result<Vec<f64>> {
    if !task.prior.contains(theta) {
        return Err(Error::invalid("theta outside prior support"));
    }
    Ok(match task.kind {
        TaskKind::TwoMoons => two_moons::simulate(theta, rng),
        TaskKind::GaussianMixture => gaussian_mixture::simulate(theta, rng),
        TaskKind::Slcp => slcp::simulate(theta, rng),
        TaskKind::Lorenz96 => lorenz96::simulate(theta, task.lorenz.unwrap(), rng),
    })
}

/// Exact log p(x|θ) for the task. Returns −∞ where the observation is outside
/// the simulator's support (Two Moons half-plane condition).
pub fn log_likelihood(task: &BenchmarkTask, theta: &[f64], x: &[f64]) -> Result<f64> {
    if theta.len() != task.theta_dim {
        return Err(Error::invalid("theta dimension mismatch"));
    }
    if x.len() != task.x_dim {
        return Err(Error::invalid("x dimension mismatch"));
    }
    if !task.prior.contains(theta) {
        return Err(Error::invalid("theta outside prior support"));
    }
    Ok(match task.kind {
        TaskKind::TwoMoons => two_moons::log_likelihood(theta, x),
        TaskKind::GaussianMixture => gaussian_mixture::log_likelihood(theta, x),
        TaskKind::Slcp => slcp::log_likelihood(theta, x),
        TaskKind::Lorenz96 => {
            let stats = lorenz96::SufficientStats::from_observation(x, task.lorenz.unwrap());
            stats.log_likelihood(theta)
        }
    })
}

/// Draws `n` i.i.d. pairs (θᵢ, xᵢ) ~ π(θ) p(x|θ).
pub fn sample_base_joint(task: &BenchmarkTask, n: usize, rng: &mut RngStream) -> Result<Vec<JointSample>> {
    if n == 0 {
        return Err(Error::invalid("sample_base_joint requires n >= 1"));
    }
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let theta = task.prior.sample(rng);
        let x = simulate(task, &theta, rng)?;
        out.push(JointSample {
            theta: RealVector::from_vec(theta)?,
            x: RealVector::from_vec(x)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prior_log_pdf_and_gradient() {
        let prior = BoxPrior::symmetric(2, -1.0, 1.0).unwrap();
        let inside = prior.log_pdf(&[0.3, -0.9]);
        assert!((inside - (-(2.0_f64.ln()) * 2.0)).abs() < 1e-15);
        assert_eq!(prior.log_pdf(&[1.1, 0.0]), f64::NEG_INFINITY);
        assert!(prior.grad_log_pdf(&[0.3, -0.9]).iter().all(|&g| g == 0.0));
        // constant density inside
        assert_eq!(prior.log_pdf(&[0.0, 0.0]), inside);
    }

    #[test]
    fn reflection_mirror_rule() {
        assert!((reflect_into(1.2, -1.0, 1.0) - 0.8).abs() < 1e-15);
        assert!((reflect_into(-1.5, -1.0, 1.0) - (-0.5)).abs() < 1e-15);
        assert!((reflect_into(0.4, -1.0, 1.0) - 0.4).abs() < 1e-15);
        // multiple folds land inside
        let v = reflect_into(7.3, -1.0, 1.0);
        assert!((-1.0..=1.0).contains(&v));
    }

    #[test]
    fn prior_sample_moments() {
        let prior = BoxPrior::symmetric(2, -1.0, 1.0).unwrap();
        let mut rng = RngStream::new(42, 0);
        let n = 100_000;
        let mut sums = [0.0; 2];
        for _ in 0..n {
            let t = prior.sample(&mut rng);
            assert!(prior.contains(&t));
            sums[0] += t[0];
            sums[1] += t[1];
        }
        for s in sums {
            assert!((s / n as f64).abs() < 0.02, "prior mean off: {}", s / n as f64);
        }
    }

    #[test]
    fn base_joint_rejects_empty_and_reproduces() {
        let task = BenchmarkTask::new(TaskKind::GaussianMixture);
        let mut rng = RngStream::new(9, 1);
        assert!(sample_base_joint(&task, 0, &mut rng).is_err());
        let a = sample_base_joint(&task, 3, &mut RngStream::new(9, 1)).unwrap();
        let b = sample_base_joint(&task, 3, &mut RngStream::new(9, 1)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn task_dimensions_match_benchmarks() {
        let dims: Vec<(usize, usize)> = TaskKind::ALL
            .iter()
            .map(|&k| {
                let t = BenchmarkTask::new(k);
                (t.theta_dim(), t.x_dim())
            })
            .collect();
        assert_eq!(dims, vec![(2, 2), (2, 2), (5, 8), (3, 168)]);
    }
}
