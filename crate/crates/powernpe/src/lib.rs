//! Amortized power-posterior inference.
//!
//! This crate trains a single temperature-conditioned neural posterior
//! estimator `q(θ | x, β)` for the power-posterior family
//! `p_β(θ|x) ∝ π(θ) p(x|θ)^β`, and validates it against exact or MCMC
//! reference samplers with kernel and classifier two-sample tests.
//!
//! Two training routes are provided:
//!
//! * **Route A** — learn a noise-conditioned joint score by denoising score
//!   matching, synthesize `(θ, x, β)` triples with short-run annealed
//!   Langevin dynamics targeting the tempered joint, then fit the posterior
//!   model on the synthesized set ([`route_a`]).
//! * **Route B** — draw one base dataset from `π(θ) p(x|θ)`, reweight it per
//!   temperature with self-normalized importance sampling (exact, neural
//!   likelihood, or classifier-ratio scores), and fit the posterior model on
//!   the weighted records ([`route_b`]).
//!
//! Supporting layers: [`numeric`] (vectors, a small MLP with reverse-mode
//! gradients, Adam, seeded RNG streams), [`simulators`] (four benchmark
//! tasks with analytic likelihoods), [`reference`] (ground-truth power
//! posterior samplers), [`density`] (mixture density networks, score network,
//! ratio classifier), [`metrics`] (MMD and C2ST), and [`harness`] (CLI
//! pipeline, persistence, SVG reports).
//!
//! The `examples/` directory carries one runnable program per capability;
//! `powernpe --help` exposes the same pipeline as subcommands.

pub mod csvio;
pub mod density;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod numeric;
pub mod reference;
pub mod route_a;
pub mod route_b;
pub mod simulators;

pub use error::{Error, Result};
