//! Dense numerics: vectors/matrices, a feed-forward network with reverse-mode
//! gradients, Adam, seeded RNG streams, and stable log-domain primitives.

pub mod adam;
pub mod batch;
pub mod mlp;
pub mod rng;
pub mod stats;
pub mod vector;

pub use adam::{adam_step, AdamState};
pub use mlp::{mlp_gradient, Activation, LayerSpec, MlpArch, MlpNetwork, MlpTrace};
pub use rng::RngStream;
pub use stats::{
    gaussian_log_pdf_diag, gaussian_log_pdf_full, logsumexp, mean_and_variance,
    median_pairwise_distance, normal_log_pdf, LN_2PI,
};
pub use vector::{axpy, dot, euclidean_distance, RealMatrix, RealVector};
