//! A small dense feed-forward network with exact reverse-mode gradients.
//!
//! The network family is fixed: stacks of affine layers and residual blocks
//! (`y = LayerNorm(x + W2·act(W1·x + b1) + b2)` with learned scale/offset).
//! That covers every model in this crate — MDN trunks, the noise-conditioned
//! score network, ratio classifiers — without a general autodiff tape.
//!
//! Parameters live in one flat `Vec<f64>` addressed by per-layer offsets, so
//! the optimizer, serialization, and finite-difference checks all work on a
//! single contiguous buffer.

use crate::error::{Error, Result};
use crate::numeric::rng::RngStream;
use crate::numeric::vector::{axpy, dot, RealVector};
use serde::{Deserialize, Serialize};

pub const LAYER_NORM_EPS: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Activation {
    Identity,
    Tanh,
}

impl Activation {
    #[inline]
    fn apply(self, z: f64) -> f64 {
        match self {
            Activation::Identity => z,
            Activation::Tanh => z.tanh(),
        }
    }

    /// Derivative expressed through the activation output.
    #[inline]
    fn derivative_from_output(self, y: f64) -> f64 {
        match self {
            Activation::Identity => 1.0,
            Activation::Tanh => 1.0 - y * y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LayerSpec {
    /// `y = act(W x + b)`, with `W` of shape `outputs × inputs`.
    Linear { inputs: usize, outputs: usize, activation: Activation },
    /// `y = LayerNorm(x + W2 act(W1 x + b1) + b2)` at constant width.
    Residual { width: usize, activation: Activation },
}

impl LayerSpec {
    fn input_dim(&self) -> usize {
        match *self {
            LayerSpec::Linear { inputs, .. } => inputs,
            LayerSpec::Residual { width, .. } => width,
        }
    }

    fn output_dim(&self) -> usize {
        match *self {
            LayerSpec::Linear { outputs, .. } => outputs,
            LayerSpec::Residual { width, .. } => width,
        }
    }

    fn param_count(&self) -> usize {
        match *self {
            LayerSpec::Linear { inputs, outputs, .. } => outputs * inputs + outputs,
            // W1, b1, W2, b2, ln scale, ln offset
            LayerSpec::Residual { width, .. } => 2 * (width * width + width) + 2 * width,
        }
    }
}

/// Architecture descriptor: serializable, independent of parameter values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlpArch {
    input_dim: usize,
    layers: Vec<LayerSpec>,
}

impl MlpArch {
    pub fn new(input_dim: usize, layers: Vec<LayerSpec>) -> Result<Self> {
        if input_dim == 0 {
            return Err(Error::invalid("network input dimension must be positive"));
        }
        let mut dim = input_dim;
        for spec in &layers {
            if spec.input_dim() != dim {
                return Err(Error::invalid(format!(
                    "layer expects input dim {}, previous layer produces {}",
                    spec.input_dim(),
                    dim
                )));
            }
            dim = spec.output_dim();
        }
        Ok(MlpArch { input_dim, layers })
    }

    /// Plain MLP: tanh hidden layers, identity output layer.
    pub fn plain(input_dim: usize, hidden: &[usize], output_dim: usize) -> Result<Self> {
        let mut layers = Vec::new();
        let mut dim = input_dim;
        for &h in hidden {
            layers.push(LayerSpec::Linear { inputs: dim, outputs: h, activation: Activation::Tanh });
            dim = h;
        }
        layers.push(LayerSpec::Linear { inputs: dim, outputs: output_dim, activation: Activation::Identity });
        MlpArch::new(input_dim, layers)
    }

    /// Residual trunk: input projection followed by `blocks` residual blocks;
    /// produces a `width`-dimensional embedding.
    pub fn residual_trunk(input_dim: usize, width: usize, blocks: usize) -> Result<Self> {
        let mut layers = vec![LayerSpec::Linear {
            inputs: input_dim,
            outputs: width,
            activation: Activation::Tanh,
        }];
        for _ in 0..blocks {
            layers.push(LayerSpec::Residual { width, activation: Activation::Tanh });
        }
        MlpArch::new(input_dim, layers)
    }

    /// Appends a linear read-out head.
    pub fn with_head(mut self, output_dim: usize) -> Result<Self> {
        let dim = self.output_dim();
        self.layers.push(LayerSpec::Linear { inputs: dim, outputs: output_dim, activation: Activation::Identity });
        MlpArch::new(self.input_dim, self.layers)
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().map_or(self.input_dim, |l| l.output_dim())
    }

    pub fn layers(&self) -> &[LayerSpec] {
        &self.layers
    }

    pub fn param_count(&self) -> usize {
        self.layers.iter().map(|l| l.param_count()).sum()
    }

    fn max_width(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.output_dim().max(l.input_dim()))
            .max()
            .unwrap_or(self.input_dim)
    }
}

/// A feed-forward network: architecture plus a flat parameter buffer.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MlpNetwork {
    arch: MlpArch,
    params: Vec<f64>,
}

impl MlpNetwork {
    /// Zero-initialized network (useful for tests; forward of any input is 0
    /// until LayerNorm offsets move it).
    pub fn zeros(arch: MlpArch) -> Self {
        let n = arch.param_count();
        let mut net = MlpNetwork { arch, params: vec![0.0; n] };
        net.reset_layer_norm_scales();
        net
    }

    /// Xavier-uniform initialization; LayerNorm scales start at 1.
    pub fn init(arch: MlpArch, rng: &mut RngStream) -> Self {
        let n = arch.param_count();
        let mut net = MlpNetwork { arch, params: vec![0.0; n] };
        let mut offset = 0;
        for spec in net.arch.layers.clone() {
            match spec {
                LayerSpec::Linear { inputs, outputs, .. } => {
                    let limit = (6.0 / (inputs + outputs) as f64).sqrt();
                    for i in 0..outputs * inputs {
                        net.params[offset + i] = rng.uniform_in(-limit, limit);
                    }
                    // biases stay zero
                }
                LayerSpec::Residual { width, .. } => {
                    let limit = (6.0 / (2 * width) as f64).sqrt();
                    let w_sq = width * width;
                    for i in 0..w_sq {
                        net.params[offset + i] = rng.uniform_in(-limit, limit);
                    }
                    let w2_off = offset + w_sq + width;
                    for i in 0..w_sq {
                        net.params[w2_off + i] = rng.uniform_in(-limit, limit);
                    }
                }
            }
            offset += spec.param_count();
        }
        net.reset_layer_norm_scales();
        net
    }

    fn reset_layer_norm_scales(&mut self) {
        let mut offset = 0;
        for spec in self.arch.layers.clone() {
            if let LayerSpec::Residual { width, .. } = spec {
                let scale_off = offset + 2 * (width * width + width);
                for i in 0..width {
                    self.params[scale_off + i] = 1.0;
                }
            }
            offset += spec.param_count();
        }
    }

    pub fn arch(&self) -> &MlpArch {
        &self.arch
    }

    pub fn input_dim(&self) -> usize {
        self.arch.input_dim()
    }

    pub fn output_dim(&self) -> usize {
        self.arch.output_dim()
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [f64] {
        &mut self.params
    }

    pub fn set_params(&mut self, params: &[f64]) -> Result<()> {
        if params.len() != self.params.len() {
            return Err(Error::invalid("parameter buffer length mismatch"));
        }
        self.params.copy_from_slice(params);
        Ok(())
    }

    /// Restores a network from its serialized parts, validating the count.
    pub fn from_parts(arch: MlpArch, params: Vec<f64>) -> Result<Self> {
        if params.len() != arch.param_count() {
            return Err(Error::invalid(format!(
                "architecture wants {} parameters, got {}",
                arch.param_count(),
                params.len()
            )));
        }
        Ok(MlpNetwork { arch, params })
    }

    /// Checked forward pass (public operation surface).
    pub fn forward_checked(&self, input: &RealVector) -> Result<RealVector> {
        if input.dim() != self.arch.input_dim() {
            return Err(Error::invalid(format!(
                "input dim {} does not match network input dim {}",
                input.dim(),
                self.arch.input_dim()
            )));
        }
        let out = self.forward(input.as_slice());
        if out.iter().any(|v| !v.is_finite()) {
            return Err(Error::numeric("network produced non-finite output"));
        }
        RealVector::from_vec(out)
    }

    /// Forward pass without tracing.
    pub fn forward(&self, input: &[f64]) -> Vec<f64> {
        debug_assert_eq!(input.len(), self.arch.input_dim());
        let mut cur = input.to_vec();
        let mut offset = 0;
        let mut scratch = vec![0.0; self.arch.max_width()];
        for spec in &self.arch.layers {
            match *spec {
                LayerSpec::Linear { inputs, outputs, activation } => {
                    let w = &self.params[offset..offset + outputs * inputs];
                    let b = &self.params[offset + outputs * inputs..offset + outputs * inputs + outputs];
                    let mut next = vec![0.0; outputs];
                    for o in 0..outputs {
                        next[o] = activation.apply(dot(&w[o * inputs..(o + 1) * inputs], &cur) + b[o]);
                    }
                    cur = next;
                }
                LayerSpec::Residual { width, activation } => {
                    let lay = ResidualView::new(&self.params[offset..offset + spec.param_count()], width);
                    let h = &mut scratch[..width];
                    for o in 0..width {
                        h[o] = activation.apply(dot(lay.w1_row(o), &cur) + lay.b1[o]);
                    }
                    let mut r = cur.clone();
                    for o in 0..width {
                        r[o] += dot(lay.w2_row(o), h) + lay.b2[o];
                    }
                    layer_norm(&r, lay.ln_scale, lay.ln_offset, &mut cur);
                }
            }
            offset += spec.param_count();
        }
        cur
    }

    /// Forward pass recording everything the backward pass needs.
    pub fn forward_traced(&self, input: &[f64]) -> MlpTrace {
        debug_assert_eq!(input.len(), self.arch.input_dim());
        let mut cur = input.to_vec();
        let mut offset = 0;
        let mut layers = Vec::with_capacity(self.arch.layers.len());
        for spec in &self.arch.layers {
            match *spec {
                LayerSpec::Linear { inputs, outputs, activation } => {
                    let w = &self.params[offset..offset + outputs * inputs];
                    let b = &self.params[offset + outputs * inputs..offset + outputs * inputs + outputs];
                    let mut out = vec![0.0; outputs];
                    for o in 0..outputs {
                        out[o] = activation.apply(dot(&w[o * inputs..(o + 1) * inputs], &cur) + b[o]);
                    }
                    layers.push(LayerTrace::Linear { input: cur, output: out.clone() });
                    cur = out;
                }
                LayerSpec::Residual { width, activation } => {
                    let lay = ResidualView::new(&self.params[offset..offset + spec.param_count()], width);
                    let mut h = vec![0.0; width];
                    for o in 0..width {
                        h[o] = activation.apply(dot(lay.w1_row(o), &cur) + lay.b1[o]);
                    }
                    let mut r = cur.clone();
                    for o in 0..width {
                        r[o] += dot(lay.w2_row(o), &h) + lay.b2[o];
                    }
                    let mut xhat = vec![0.0; width];
                    let inv_std = normalize(&r, &mut xhat);
                    let mut out = vec![0.0; width];
                    for i in 0..width {
                        out[i] = lay.ln_scale[i] * xhat[i] + lay.ln_offset[i];
                    }
                    layers.push(LayerTrace::Residual { input: cur, hidden: h, xhat, inv_std });
                    cur = out;
                }
            }
            offset += spec.param_count();
        }
        MlpTrace { layers, output: cur }
    }

    /// Reverse pass. Accumulates parameter gradients into `grads` (`+=`, so a
    /// minibatch can share one buffer) and returns the input gradient.
    pub fn backward(&self, trace: &MlpTrace, output_grad: &[f64], grads: &mut [f64]) -> Vec<f64> {
        debug_assert_eq!(grads.len(), self.params.len());
        debug_assert_eq!(output_grad.len(), self.arch.output_dim());
        let mut upstream = output_grad.to_vec();

        // Walk layers in reverse; offsets recomputed per layer.
        let mut offsets = Vec::with_capacity(self.arch.layers.len());
        let mut off = 0;
        for spec in &self.arch.layers {
            offsets.push(off);
            off += spec.param_count();
        }

        for (idx, spec) in self.arch.layers.iter().enumerate().rev() {
            let offset = offsets[idx];
            match (*spec, &trace.layers[idx]) {
                (LayerSpec::Linear { inputs, outputs, activation }, LayerTrace::Linear { input, output }) => {
                    let w = &self.params[offset..offset + outputs * inputs];
                    let (gw, gb) = grads[offset..offset + outputs * inputs + outputs].split_at_mut(outputs * inputs);
                    let mut dinput = vec![0.0; inputs];
                    for o in 0..outputs {
                        let dz = upstream[o] * activation.derivative_from_output(output[o]);
                        gb[o] += dz;
                        axpy(dz, input, &mut gw[o * inputs..(o + 1) * inputs]);
                        axpy(dz, &w[o * inputs..(o + 1) * inputs], &mut dinput);
                    }
                    upstream = dinput;
                }
                (LayerSpec::Residual { width, activation }, LayerTrace::Residual { input, hidden, xhat, inv_std }) => {
                    let pc = spec.param_count();
                    let (lay, glay) = {
                        let lay = ResidualView::new(&self.params[offset..offset + pc], width);
                        (lay, offset)
                    };
                    // LayerNorm backward.
                    let n = width as f64;
                    let mut dxhat = vec![0.0; width];
                    {
                        let g = &mut grads[glay..glay + pc];
                        let gv = ResidualViewMut::new(g, width);
                        for i in 0..width {
                            gv.ln_scale[i] += upstream[i] * xhat[i];
                            gv.ln_offset[i] += upstream[i];
                            dxhat[i] = upstream[i] * lay.ln_scale[i];
                        }
                    }
                    let mean_dxhat: f64 = dxhat.iter().sum::<f64>() / n;
                    let mean_dxhat_xhat: f64 = dxhat.iter().zip(xhat.iter()).map(|(a, b)| a * b).sum::<f64>() / n;
                    let mut dr = vec![0.0; width];
                    for i in 0..width {
                        dr[i] = inv_std * (dxhat[i] - mean_dxhat - xhat[i] * mean_dxhat_xhat);
                    }
                    // Second linear (z2 = W2 h + b2; r = input + z2).
                    let mut dh = vec![0.0; width];
                    {
                        let g = &mut grads[glay..glay + pc];
                        let gv = ResidualViewMut::new(g, width);
                        for o in 0..width {
                            gv.b2[o] += dr[o];
                            axpy(dr[o], hidden, &mut gv.w2[o * width..(o + 1) * width]);
                            axpy(dr[o], lay.w2_row(o), &mut dh);
                        }
                    }
                    // First linear through the activation.
                    let mut dinput = dr.clone(); // skip connection
                    {
                        let g = &mut grads[glay..glay + pc];
                        let gv = ResidualViewMut::new(g, width);
                        for o in 0..width {
                            let dz1 = dh[o] * activation.derivative_from_output(hidden[o]);
                            gv.b1[o] += dz1;
                            axpy(dz1, input, &mut gv.w1[o * width..(o + 1) * width]);
                            axpy(dz1, lay.w1_row(o), &mut dinput);
                        }
                    }
                    upstream = dinput;
                }
                _ => unreachable!("trace/arch mismatch"),
            }
        }
        upstream
    }
}

/// Scalar loss of the network output together with its output gradient.
pub type LossClosure<'a> = &'a dyn Fn(&[f64]) -> (f64, Vec<f64>);

/// Gradient of a scalar loss composed with the network, for one input.
///
/// The closure maps the network output to `(loss, dloss/doutput)`; the full
/// parameter gradient comes back alongside the loss value.
pub fn mlp_gradient(net: &MlpNetwork, input: &[f64], loss: LossClosure<'_>) -> Result<(f64, Vec<f64>)> {
    if input.len() != net.input_dim() {
        return Err(Error::invalid("input dimension mismatch in mlp_gradient"));
    }
    let trace = net.forward_traced(input);
    let (value, out_grad) = loss(&trace.output);
    if !value.is_finite() {
        return Err(Error::numeric("loss is non-finite"));
    }
    let mut grads = vec![0.0; net.param_count()];
    net.backward(&trace, &out_grad, &mut grads);
    Ok((value, grads))
}

#[derive(Debug, Clone)]
pub struct MlpTrace {
    layers: Vec<LayerTrace>,
    pub output: Vec<f64>,
}

#[derive(Debug, Clone)]
enum LayerTrace {
    Linear { input: Vec<f64>, output: Vec<f64> },
    Residual { input: Vec<f64>, hidden: Vec<f64>, xhat: Vec<f64>, inv_std: f64 },
}

/// Parameter views into a residual block's flat slice.
struct ResidualView<'a> {
    w1: &'a [f64],
    b1: &'a [f64],
    w2: &'a [f64],
    b2: &'a [f64],
    ln_scale: &'a [f64],
    ln_offset: &'a [f64],
    width: usize,
}

impl<'a> ResidualView<'a> {
    fn new(p: &'a [f64], width: usize) -> Self {
        let sq = width * width;
        ResidualView {
            w1: &p[0..sq],
            b1: &p[sq..sq + width],
            w2: &p[sq + width..2 * sq + width],
            b2: &p[2 * sq + width..2 * sq + 2 * width],
            ln_scale: &p[2 * sq + 2 * width..2 * sq + 3 * width],
            ln_offset: &p[2 * sq + 3 * width..2 * sq + 4 * width],
            width,
        }
    }

    #[inline]
    fn w1_row(&self, o: usize) -> &[f64] {
        &self.w1[o * self.width..(o + 1) * self.width]
    }

    #[inline]
    fn w2_row(&self, o: usize) -> &[f64] {
        &self.w2[o * self.width..(o + 1) * self.width]
    }
}

struct ResidualViewMut<'a> {
    w1: &'a mut [f64],
    b1: &'a mut [f64],
    w2: &'a mut [f64],
    b2: &'a mut [f64],
    ln_scale: &'a mut [f64],
    ln_offset: &'a mut [f64],
}

impl<'a> ResidualViewMut<'a> {
    fn new(p: &'a mut [f64], width: usize) -> Self {
        let sq = width * width;
        let (w1, rest) = p.split_at_mut(sq);
        let (b1, rest) = rest.split_at_mut(width);
        let (w2, rest) = rest.split_at_mut(sq);
        let (b2, rest) = rest.split_at_mut(width);
        let (ln_scale, ln_offset) = rest.split_at_mut(width);
        ResidualViewMut { w1, b1, w2, b2, ln_scale, ln_offset }
    }
}

fn layer_norm(r: &[f64], scale: &[f64], offset: &[f64], out: &mut Vec<f64>) {
    let mut xhat = vec![0.0; r.len()];
    normalize(r, &mut xhat);
    out.clear();
    out.extend((0..r.len()).map(|i| scale[i] * xhat[i] + offset[i]));
}

/// Writes (r - mean)/sqrt(var + eps) into `xhat`, returning 1/sqrt(var + eps).
fn normalize(r: &[f64], xhat: &mut [f64]) -> f64 {
    let n = r.len() as f64;
    let mean = r.iter().sum::<f64>() / n;
    let var = r.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let inv_std = 1.0 / (var + LAYER_NORM_EPS).sqrt();
    for i in 0..r.len() {
        xhat[i] = (r[i] - mean) * inv_std;
    }
    inv_std
}
