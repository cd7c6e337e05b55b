//! Wrapper feature selection driven by the Harris Hawks optimizer: hawks
//! live in [0,1]^D, are thresholded into 0/1 feature masks, and are scored
//! by a two-term cost that weighs classifier error against mask size.

use std::path::Path;

use crate::data::{Dataset, SplitSpec};
use crate::digest;
use crate::error::{Error, Result};
use crate::hho::{self, Bounds, SwarmConfig};
use crate::rng::derive_seed;
use crate::textfile;
use crate::train::{self, TrainConfig};

/// Stream tags for seeds derived from the selection run's seed.
const VALIDATION_SPLIT_STREAM: u64 = 0x11;
const INNER_TRAIN_STREAM: u64 = 0x12;

/// 0/1 vector marking which traffic features feed the classifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureMask {
    bits: Vec<bool>,
}

impl FeatureMask {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyInput("feature mask"));
        }
        Ok(Self { bits })
    }

    pub fn all_selected(len: usize) -> Result<Self> {
        Self::new(vec![true; len])
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn selected_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn selected_indices(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .collect()
    }

    /// Persist as `feature <name> 0|1` lines.
    pub fn save(&self, path: &Path, feature_names: &[String]) -> Result<()> {
        if feature_names.len() != self.bits.len() {
            return Err(Error::DimensionMismatch {
                context: "mask vs feature names",
                expected: self.bits.len(),
                actual: feature_names.len(),
            });
        }
        let mut body = String::from("hho-mlp-mask v1\n");
        for (name, &bit) in feature_names.iter().zip(&self.bits) {
            body.push_str(&format!("feature {} {}\n", name, u8::from(bit)));
        }
        textfile::write_text(path, &digest::stamp(&body))
    }

    /// Load a mask file, returning the bits and the feature names they
    /// belong to (consumers match names against their dataset).
    pub fn load(path: &Path) -> Result<(Self, Vec<String>)> {
        let text = textfile::read_text(path)?;
        let path_str = path.display().to_string();
        digest::verify(&text, &path_str)?;
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "hho-mlp-mask v1")) => {}
            _ => {
                return Err(Error::CorruptFile {
                    path: path_str,
                    reason: "missing `hho-mlp-mask v1` header".to_string(),
                })
            }
        }
        let mut bits = Vec::new();
        let mut names = Vec::new();
        for (idx, line) in lines {
            if line.starts_with("digest ") || line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["feature", name, bit] => {
                    names.push((*name).to_string());
                    bits.push(match *bit {
                        "0" => false,
                        "1" => true,
                        other => {
                            return Err(Error::Parse {
                                path: path_str,
                                line: idx + 1,
                                message: format!("mask bit must be 0 or 1, found {other:?}"),
                            })
                        }
                    });
                }
                _ => {
                    return Err(Error::Parse {
                        path: path_str,
                        line: idx + 1,
                        message: format!("expected `feature <name> <bit>`, found {line:?}"),
                    })
                }
            }
        }
        Ok((Self::new(bits)?, names))
    }
}

/// Weights of the two cost terms; they must sum to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostWeights {
    pub alpha: f64,
    pub beta_fs: f64,
}

impl CostWeights {
    pub fn new(alpha: f64, beta_fs: f64) -> Result<Self> {
        let ok_range = (0.0..=1.0).contains(&alpha) && (0.0..=1.0).contains(&beta_fs);
        if !ok_range || (alpha + beta_fs - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "cost weights must lie in [0,1] and sum to 1, got alpha={alpha}, beta={beta_fs}"
            )));
        }
        Ok(Self { alpha, beta_fs })
    }
}

impl Default for CostWeights {
    fn default() -> Self {
        Self {
            alpha: 0.99,
            beta_fs: 0.01,
        }
    }
}

/// Threshold a continuous position into a mask; boundary is inclusive.
/// An all-zero result is repaired by setting the coordinate with the
/// largest value (first such coordinate on ties), so masks handed to
/// training always select at least one feature.
pub fn binarize_position(position: &[f64], threshold: f64) -> FeatureMask {
    let mut bits: Vec<bool> = position.iter().map(|&x| x >= threshold).collect();
    if bits.iter().all(|&b| !b) {
        let mut best = 0;
        for (i, &x) in position.iter().enumerate() {
            if x > position[best] {
                best = i;
            }
        }
        bits[best] = true;
    }
    FeatureMask { bits }
}

/// The selection cost: `alpha·Err + beta·selected/total`.
pub fn cost_ids(error_rate: f64, mask: &FeatureMask, weights: &CostWeights) -> f64 {
    weights.alpha * error_rate
        + weights.beta_fs * (mask.selected_count() as f64 / mask.len() as f64)
}

/// Restrict a dataset to a mask's selected features.
pub fn apply_mask(dataset: &Dataset, mask: &FeatureMask) -> Result<Dataset> {
    if mask.len() != dataset.width() {
        return Err(Error::DimensionMismatch {
            context: "feature mask vs dataset width",
            expected: dataset.width(),
            actual: mask.len(),
        });
    }
    if mask.selected_count() == 0 {
        return Err(Error::EmptyInput("selected features"));
    }
    dataset.select_columns(&mask.selected_indices())
}

/// Classifier-error estimator used inside the selection loop:
/// (masked train, masked validation) → error rate in [0, 1].
pub trait InnerEvaluator {
    fn error_rate(&self, train: &Dataset, validation: &Dataset) -> Result<f64>;
}

/// Default inner evaluator: a small fixed-topology network trained with a
/// short optimizer budget, scored by misclassification rate on the
/// validation partition. Both the budget and the seed are fixed so the
/// selection objective is deterministic.
#[derive(Debug, Clone)]
pub struct MlpInnerEvaluator {
    pub hidden_layers: Vec<usize>,
    pub swarm: SwarmConfig,
}

impl MlpInnerEvaluator {
    pub fn new(hidden_layers: Vec<usize>, swarm: SwarmConfig) -> Self {
        Self {
            hidden_layers,
            swarm,
        }
    }

    /// The documented short-budget default: one hidden layer of five
    /// neurons trained with a 5-hawk, 10-iteration run.
    pub fn with_budget(selection_seed: u64) -> Self {
        Self::new(
            vec![5],
            SwarmConfig::new(5, 10, derive_seed(selection_seed, INNER_TRAIN_STREAM)),
        )
    }
}

impl InnerEvaluator for MlpInnerEvaluator {
    fn error_rate(&self, train_part: &Dataset, validation: &Dataset) -> Result<f64> {
        let topology = crate::mlp::MlpTopology::new(train_part.width(), self.hidden_layers.clone(), 1)?;
        let config = TrainConfig::new(topology, self.swarm.clone());
        let model = train::train(train_part, &config)?;
        let report = train::evaluate(&model, validation)?;
        Ok(1.0 - report.accuracy)
    }
}

/// Result of one selection run.
#[derive(Debug, Clone)]
pub struct SelectionOutcome {
    pub mask: FeatureMask,
    pub best_cost: f64,
    /// Best cost after each iteration; non-increasing.
    pub history: Vec<f64>,
}

/// The deterministic fit/validation partitioning a selection run with this
/// seed evaluates masks on. Exposed so exhaustive oracles can score masks
/// on the identical cost landscape.
pub fn selection_split(dataset: &Dataset, seed: u64) -> Result<(Dataset, Dataset)> {
    let split = SplitSpec::new(0.75, true, derive_seed(seed, VALIDATION_SPLIT_STREAM));
    dataset.split(&split)
}

/// Run the optimizer over [0,1]^D to pick a feature subset. Each fitness
/// call thresholds the hawk into a mask, trains the inner evaluator on the
/// masked training rows, and scores `cost_ids` with the validation error.
pub fn select_features(
    dataset: &Dataset,
    swarm: &SwarmConfig,
    weights: &CostWeights,
    inner: &dyn InnerEvaluator,
) -> Result<SelectionOutcome> {
    let width = dataset.width();
    let (fit_part, val_part) = selection_split(dataset, swarm.seed)?;

    let objective = FnObjectiveResult {
        dim: width,
        f: |position: &[f64]| -> Result<f64> {
            let mask = binarize_position(position, 0.5);
            let masked_fit = apply_mask(&fit_part, &mask)?;
            let masked_val = apply_mask(&val_part, &mask)?;
            let err = inner.error_rate(&masked_fit, &masked_val)?;
            Ok(cost_ids(err, &mask, weights))
        },
    };

    let bounds = Bounds::uniform(width, 0.0, 1.0)?;
    let outcome = hho::optimize(&objective, swarm, &bounds)?;
    Ok(SelectionOutcome {
        mask: binarize_position(&outcome.best_position, 0.5),
        best_cost: outcome.best_fitness,
        history: outcome.history,
    })
}

/// Objective adapter for fallible fitness closures.
struct FnObjectiveResult<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> Result<f64>> hho::Objective for FnObjectiveResult<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn evaluate(&self, position: &[f64]) -> Result<f64> {
        (self.f)(position)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binarize_threshold_and_repair() {
        let m = binarize_position(&[0.9, 0.1, 0.5], 0.5);
        assert_eq!(m.bits(), &[true, false, true]);

        let repaired = binarize_position(&[0.1, 0.2], 0.5);
        assert_eq!(repaired.bits(), &[false, true]);

        let all = binarize_position(&[0.5, 0.7, 0.99], 0.5);
        assert_eq!(all.selected_count(), 3);

        // Tie on the repair path keeps the first maximum.
        let tie = binarize_position(&[0.3, 0.3], 0.5);
        assert_eq!(tie.bits(), &[true, false]);
    }

    #[test]
    fn cost_ids_examples() {
        let weights = CostWeights::default();
        let mut bits = vec![false; 41];
        bits[0] = true;
        let mask = FeatureMask::new(bits).unwrap();
        let cost = cost_ids(0.0, &mask, &weights);
        assert!((cost - 0.01 / 41.0).abs() < 1e-12, "{cost}");

        let full = FeatureMask::all_selected(41).unwrap();
        assert!((cost_ids(1.0, &full, &weights) - 1.0).abs() < 1e-12);

        let err_only = CostWeights::new(1.0, 0.0).unwrap();
        assert_eq!(cost_ids(0.37, &full, &err_only), 0.37);
    }

    #[test]
    fn cost_weights_validation() {
        assert!(CostWeights::new(0.5, 0.5).is_ok());
        assert!(CostWeights::new(0.9, 0.2).is_err());
        assert!(CostWeights::new(-0.1, 1.1).is_err());
    }

    #[test]
    fn cost_monotone_in_count_and_error() {
        let weights = CostWeights::default();
        let small = FeatureMask::new(vec![true, false, false, false]).unwrap();
        let large = FeatureMask::new(vec![true, true, true, false]).unwrap();
        assert!(cost_ids(0.2, &small, &weights) < cost_ids(0.2, &large, &weights));
        assert!(cost_ids(0.2, &small, &weights) < cost_ids(0.3, &small, &weights));
    }

    #[test]
    fn mask_file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mask.txt");
        let mask = FeatureMask::new(vec![true, false, true]).unwrap();
        let names = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        mask.save(&path, &names).unwrap();
        let (loaded, loaded_names) = FeatureMask::load(&path).unwrap();
        assert_eq!(loaded, mask);
        assert_eq!(loaded_names, names);
    }

    #[test]
    fn apply_mask_errors() {
        let ds = Dataset::new(
            vec![vec![1.0, 2.0], vec![3.0, 4.0]],
            vec![0, 1],
            vec!["a".into(), "b".into()],
        )
        .unwrap();
        let wrong_len = FeatureMask::new(vec![true]).unwrap();
        assert!(apply_mask(&ds, &wrong_len).is_err());
        let ok = FeatureMask::new(vec![false, true]).unwrap();
        let masked = apply_mask(&ds, &ok).unwrap();
        assert_eq!(masked.width(), 1);
        assert_eq!(masked.feature_names(), &["b".to_string()]);
    }

    /// Constant-error evaluator for the degenerate-weighting case.
    struct ConstantError(f64);

    impl InnerEvaluator for ConstantError {
        fn error_rate(&self, _train: &Dataset, _validation: &Dataset) -> Result<f64> {
            Ok(self.0)
        }
    }

    #[test]
    fn selection_with_constant_error_and_zero_beta_is_flat() {
        // With beta = 0 and constant inner error the cost is independent of
        // the mask, so the history must be flat from the first iteration.
        let rows: Vec<Vec<f64>> = (0..40)
            .map(|i| vec![(i % 7) as f64, (i % 5) as f64, (i % 3) as f64])
            .collect();
        let labels: Vec<u8> = (0..40).map(|i| (i % 2) as u8).collect();
        let ds = Dataset::new(rows, labels, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let stats = ds.fit_norm_stats(0.0, 1.0).unwrap();
        let ds = ds.normalize(&stats).unwrap();

        let weights = CostWeights::new(1.0, 0.0).unwrap();
        let outcome = select_features(
            &ds,
            &SwarmConfig::new(4, 6, 3),
            &weights,
            &ConstantError(0.25),
        )
        .unwrap();
        assert!(outcome.history.iter().all(|&c| (c - 0.25).abs() < 1e-12));
        assert!(outcome.mask.selected_count() >= 1);
    }

    #[test]
    fn selection_is_deterministic() {
        let rows: Vec<Vec<f64>> = (0..30)
            .map(|i| vec![(i % 2) as f64, (i % 5) as f64 / 4.0])
            .collect();
        let labels: Vec<u8> = (0..30).map(|i| (i % 2) as u8).collect();
        let ds = Dataset::new(rows, labels, vec!["a".into(), "b".into()]).unwrap();
        let stats = ds.fit_norm_stats(0.0, 1.0).unwrap();
        let ds = ds.normalize(&stats).unwrap();

        let swarm = SwarmConfig::new(4, 5, 11);
        let weights = CostWeights::default();
        let inner = MlpInnerEvaluator::with_budget(swarm.seed);
        let a = select_features(&ds, &swarm, &weights, &inner).unwrap();
        let b = select_features(&ds, &swarm, &weights, &inner).unwrap();
        assert_eq!(a.mask, b.mask);
        assert_eq!(a.history, b.history);
    }
}
