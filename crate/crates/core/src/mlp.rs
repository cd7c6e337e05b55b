//! Feedforward multilayer perceptron with sigmoid activations, plus the
//! flat-vector codec that maps an optimizer solution onto network weights
//! and biases.
//!
//! Parameter layout of the flat vector: all weight matrices layer by layer
//! (row-major, i.e. each destination neuron's fan-in weights contiguous),
//! followed by all bias vectors layer by layer. The layout is fixed so that
//! a stored parameter vector always decodes to the same network.

use crate::data::Dataset;
use crate::error::{Error, Result};

/// Layer sizes of a network: inputs, at least one hidden layer, outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlpTopology {
    input_size: usize,
    hidden_layers: Vec<usize>,
    output_size: usize,
}

impl MlpTopology {
    pub fn new(input_size: usize, hidden_layers: Vec<usize>, output_size: usize) -> Result<Self> {
        if input_size == 0 || output_size == 0 {
            return Err(Error::InvalidConfig(
                "input and output sizes must be positive".to_string(),
            ));
        }
        if hidden_layers.is_empty() {
            return Err(Error::InvalidConfig(
                "at least one hidden layer is required".to_string(),
            ));
        }
        if hidden_layers.contains(&0) {
            return Err(Error::InvalidConfig(
                "hidden layer sizes must be positive".to_string(),
            ));
        }
        Ok(Self {
            input_size,
            hidden_layers,
            output_size,
        })
    }

    pub fn input_size(&self) -> usize {
        self.input_size
    }

    pub fn hidden_layers(&self) -> &[usize] {
        &self.hidden_layers
    }

    pub fn output_size(&self) -> usize {
        self.output_size
    }

    /// Widths of every layer, inputs through outputs.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::with_capacity(self.hidden_layers.len() + 2);
        sizes.push(self.input_size);
        sizes.extend_from_slice(&self.hidden_layers);
        sizes.push(self.output_size);
        sizes
    }

    /// Total number of weights and biases:
    /// Σ over layers of (fan_in·fan_out + fan_out).
    pub fn parameter_count(&self) -> usize {
        self.layer_sizes()
            .windows(2)
            .map(|w| w[0] * w[1] + w[1])
            .sum()
    }

    fn max_width(&self) -> usize {
        self.layer_sizes().into_iter().max().unwrap_or(0)
    }

    /// Number of weights before the bias block starts.
    fn weight_count(&self) -> usize {
        self.layer_sizes().windows(2).map(|w| w[0] * w[1]).sum()
    }
}

/// A network's parameters as one flat vector matching a topology.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpParams {
    flat: Vec<f64>,
}

impl MlpParams {
    /// Adopt a flat vector, checking length and finiteness against the
    /// topology it is meant to parameterize.
    pub fn from_flat(topology: &MlpTopology, flat: Vec<f64>) -> Result<Self> {
        let expected = topology.parameter_count();
        if flat.len() != expected {
            return Err(Error::DimensionMismatch {
                context: "parameter vector vs topology",
                expected,
                actual: flat.len(),
            });
        }
        if flat.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig(
                "parameter vector contains non-finite values".to_string(),
            ));
        }
        Ok(Self { flat })
    }

    pub fn flat(&self) -> &[f64] {
        &self.flat
    }

    pub fn into_flat(self) -> Vec<f64> {
        self.flat
    }
}

/// Weighted sum of one neuron: Σ wᵢ·Iᵢ + b.
pub fn neuron_sum(inputs: &[f64], weights: &[f64], bias: f64) -> Result<f64> {
    if inputs.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            context: "neuron inputs vs weights",
            expected: weights.len(),
            actual: inputs.len(),
        });
    }
    Ok(inputs
        .iter()
        .zip(weights)
        .map(|(&i, &w)| w * i)
        .sum::<f64>()
        + bias)
}

/// Logistic activation 1/(1 + e^(−x)); saturates cleanly for large |x|.
pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Evaluate the network on one input row. Sigmoid is applied on every
/// layer, outputs included.
pub fn forward(topology: &MlpTopology, params: &MlpParams, input: &[f64]) -> Result<Vec<f64>> {
    if input.len() != topology.input_size() {
        return Err(Error::DimensionMismatch {
            context: "forward input vs topology",
            expected: topology.input_size(),
            actual: input.len(),
        });
    }
    let mut current = input.to_vec();
    let mut next = Vec::with_capacity(topology.max_width());
    forward_layers(topology, &params.flat, &mut current, &mut next);
    Ok(current)
}

/// Hot-path forward pass over pre-validated buffers. `current` holds the
/// input on entry and the output on exit; `next` is scratch.
pub(crate) fn forward_layers(
    topology: &MlpTopology,
    flat: &[f64],
    current: &mut Vec<f64>,
    next: &mut Vec<f64>,
) {
    let sizes = topology.layer_sizes();
    let mut weight_offset = 0;
    let mut bias_offset = topology.weight_count();
    for w in sizes.windows(2) {
        let (fan_in, fan_out) = (w[0], w[1]);
        next.clear();
        for j in 0..fan_out {
            let weights = &flat[weight_offset + j * fan_in..weight_offset + (j + 1) * fan_in];
            let bias = flat[bias_offset + j];
            let mut sum = bias;
            for (x, &weight) in current.iter().zip(weights) {
                sum += weight * x;
            }
            next.push(sigmoid(sum));
        }
        weight_offset += fan_in * fan_out;
        bias_offset += fan_out;
        std::mem::swap(current, next);
    }
}

/// Threshold a single-output network's activation into a 0/1 class.
/// The boundary maps to class 1 (intrusion).
pub fn predict_class(output: &[f64], threshold: f64) -> Result<u8> {
    if output.len() != 1 {
        return Err(Error::DimensionMismatch {
            context: "binary prediction vs output vector",
            expected: 1,
            actual: output.len(),
        });
    }
    Ok(u8::from(output[0] >= threshold))
}

/// Mean squared error of the raw network output against 0/1 labels:
/// `(1/n)·Σ (Ê_i − E_i)²`. The training fitness.
pub fn mse_fitness(topology: &MlpTopology, params: &MlpParams, dataset: &Dataset) -> Result<f64> {
    mse_over_rows(topology, params.flat(), dataset)
}

pub(crate) fn mse_over_rows(topology: &MlpTopology, flat: &[f64], dataset: &Dataset) -> Result<f64> {
    if dataset.n_rows() == 0 {
        return Err(Error::EmptyInput("dataset"));
    }
    if dataset.width() != topology.input_size() {
        return Err(Error::DimensionMismatch {
            context: "dataset width vs topology input",
            expected: topology.input_size(),
            actual: dataset.width(),
        });
    }
    if topology.output_size() != 1 {
        return Err(Error::DimensionMismatch {
            context: "binary fitness vs output size",
            expected: 1,
            actual: topology.output_size(),
        });
    }
    let mut current = Vec::with_capacity(topology.max_width());
    let mut next = Vec::with_capacity(topology.max_width());
    let mut sum = 0.0;
    for (row, &label) in dataset.rows().iter().zip(dataset.labels()) {
        current.clear();
        current.extend_from_slice(row);
        forward_layers(topology, flat, &mut current, &mut next);
        let residual = current[0] - f64::from(label);
        sum += residual * residual;
    }
    Ok(sum / dataset.n_rows() as f64)
}
