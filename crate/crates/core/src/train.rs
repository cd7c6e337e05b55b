//! The end-to-end training pipeline: encode network parameters as hawks,
//! minimize the mean-squared detection error over the training rows, and
//! decode the surviving prey into a trained model.

use std::path::Path;

use crate::data::{Dataset, NormStats};
use crate::digest;
use crate::error::{Error, Result};
use crate::featsel::{apply_mask, FeatureMask};
use crate::hho::{self, Bounds, Objective, SwarmConfig};
use crate::metrics::{ConfusionCounts, MetricsReport};
use crate::mlp::{self, MlpParams, MlpTopology};
use crate::textfile;

/// Tolerance when checking that a dataset claiming normalization really
/// lies inside its target range.
const RANGE_TOLERANCE: f64 = 1e-9;

/// Classification threshold applied to the single sigmoid output; the
/// boundary maps to the intrusion class.
pub const CLASS_THRESHOLD: f64 = 0.5;

/// Everything one training run needs.
#[derive(Debug, Clone)]
pub struct TrainConfig {
    pub topology: MlpTopology,
    pub swarm: SwarmConfig,
    /// Search box for every weight and bias.
    pub weight_bounds: (f64, f64),
    /// Restrict training to these features of the input dataset.
    pub feature_mask: Option<FeatureMask>,
}

impl TrainConfig {
    /// Default search box is [-6, 6] per parameter. Through two sigmoid
    /// layers a bias has to be able to offset roughly half the fan-in
    /// (≈ 2.5 for five hidden units), and outputs only reach the label
    /// extremes when layer sums can saturate; a unit box keeps every
    /// output pinned near 0.5 and the error landscape flat.
    pub fn new(topology: MlpTopology, swarm: SwarmConfig) -> Self {
        Self {
            topology,
            swarm,
            weight_bounds: (-6.0, 6.0),
            feature_mask: None,
        }
    }

    pub fn with_mask(mut self, mask: FeatureMask) -> Self {
        self.feature_mask = Some(mask);
        self
    }
}

/// A trained network plus everything needed to apply it consistently:
/// the mask used at train time, the normalization statistics of the data
/// it saw, and the optimization trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub topology: MlpTopology,
    pub params: MlpParams,
    pub feature_mask: Option<FeatureMask>,
    /// Names of the full-width features the mask indexes into.
    pub feature_names: Vec<String>,
    pub norm_stats: NormStats,
    pub fitness_history: Vec<f64>,
}

struct MseObjective<'a> {
    topology: &'a MlpTopology,
    dataset: &'a Dataset,
}

impl Objective for MseObjective<'_> {
    fn dim(&self) -> usize {
        self.topology.parameter_count()
    }

    fn evaluate(&self, position: &[f64]) -> Result<f64> {
        mlp::mse_over_rows(self.topology, position, self.dataset)
    }
}

fn check_normalized(dataset: &Dataset) -> Result<&NormStats> {
    let stats = dataset.norm_stats().ok_or_else(|| {
        Error::InvalidConfig("dataset must be normalized before training".to_string())
    })?;
    let lo = stats.na - RANGE_TOLERANCE;
    let hi = stats.nb + RANGE_TOLERANCE;
    for row in dataset.rows() {
        for &v in row {
            if !(lo..=hi).contains(&v) {
                return Err(Error::InvalidConfig(format!(
                    "dataset value {v} lies outside the normalization range [{}, {}]",
                    stats.na, stats.nb
                )));
            }
        }
    }
    Ok(stats)
}

/// Train a network on a normalized dataset by running the optimizer over
/// the flat parameter vector.
pub fn train(dataset: &Dataset, config: &TrainConfig) -> Result<TrainedModel> {
    let stats = check_normalized(dataset)?.clone();
    let feature_names = dataset.feature_names().to_vec();

    let working;
    let working_ref = match &config.feature_mask {
        Some(mask) => {
            working = apply_mask(dataset, mask)?;
            &working
        }
        None => dataset,
    };

    if working_ref.width() != config.topology.input_size() {
        return Err(Error::DimensionMismatch {
            context: "training features vs topology input",
            expected: config.topology.input_size(),
            actual: working_ref.width(),
        });
    }
    if working_ref.n_rows() == 0 {
        return Err(Error::EmptyInput("training dataset"));
    }

    let (lo, hi) = config.weight_bounds;
    let bounds = Bounds::uniform(config.topology.parameter_count(), lo, hi)?;
    let objective = MseObjective {
        topology: &config.topology,
        dataset: working_ref,
    };
    let outcome = hho::optimize(&objective, &config.swarm, &bounds)?;

    Ok(TrainedModel {
        params: MlpParams::from_flat(&config.topology, outcome.best_position)?,
        topology: config.topology.clone(),
        feature_mask: config.feature_mask.clone(),
        feature_names,
        norm_stats: stats,
        fitness_history: outcome.history,
    })
}

/// Score a model on a full-width normalized dataset. The dataset must carry
/// the exact normalization statistics and feature names the model was
/// trained with; the model's own mask is applied internally so columns can
/// never silently shift.
pub fn evaluate(model: &TrainedModel, dataset: &Dataset) -> Result<MetricsReport> {
    let stats = dataset.norm_stats().ok_or_else(|| {
        Error::InvalidConfig("dataset must be normalized before evaluation".to_string())
    })?;
    if *stats != model.norm_stats {
        return Err(Error::Mismatch(
            "dataset normalization statistics differ from the model's; \
             evaluate with data prepared by the same run"
                .to_string(),
        ));
    }
    if dataset.feature_names() != model.feature_names.as_slice() {
        return Err(Error::Mismatch(
            "dataset feature names differ from the model's".to_string(),
        ));
    }

    let working;
    let working_ref = match &model.feature_mask {
        Some(mask) => {
            working = apply_mask(dataset, mask)?;
            &working
        }
        None => dataset,
    };
    if working_ref.width() != model.topology.input_size() {
        return Err(Error::DimensionMismatch {
            context: "evaluation features vs topology input",
            expected: model.topology.input_size(),
            actual: working_ref.width(),
        });
    }

    let mut outputs = Vec::with_capacity(working_ref.n_rows());
    let mut counts = ConfusionCounts::default();
    for (row, &label) in working_ref.rows().iter().zip(working_ref.labels()) {
        let out = mlp::forward(&model.topology, &model.params, row)?;
        let class = mlp::predict_class(&out, CLASS_THRESHOLD)?;
        counts.record(class == 1, label == 1);
        outputs.push(out[0]);
    }
    MetricsReport::compute(counts, &outputs, working_ref.labels())
}

impl TrainedModel {
    /// Serialize to the plain-text model format; round-trips bit-exactly.
    pub fn to_text(&self) -> String {
        let mut body = String::from("hho-mlp-model v1\n");
        let hidden = self
            .topology
            .hidden_layers()
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        body.push_str(&format!(
            "topology {} {} {}\n",
            self.topology.input_size(),
            hidden,
            self.topology.output_size()
        ));
        match &self.feature_mask {
            Some(mask) => {
                let bits: Vec<&str> = mask.bits().iter().map(|&b| if b { "1" } else { "0" }).collect();
                body.push_str(&format!("mask {}\n", bits.join(" ")));
            }
            None => body.push_str("mask none\n"),
        }
        body.push_str(&format!(
            "range {} {}\n",
            self.norm_stats.na, self.norm_stats.nb
        ));
        body.push_str(&format!("fitted_rows {}\n", self.norm_stats.fitted_rows));
        for (i, name) in self.feature_names.iter().enumerate() {
            body.push_str(&format!(
                "stat {} {} {}\n",
                name, self.norm_stats.mins[i], self.norm_stats.maxs[i]
            ));
        }
        body.push_str("params ");
        body.push_str(&textfile::join_f64(self.params.flat()));
        body.push('\n');
        body.push_str("history ");
        body.push_str(&textfile::join_f64(&self.fitness_history));
        body.push('\n');
        digest::stamp(&body)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        textfile::write_text(path, &self.to_text())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = textfile::read_text(path)?;
        let path_str = path.display().to_string();
        digest::verify(&text, &path_str)?;
        Self::from_text(&text, &path_str)
    }

    fn from_text(text: &str, path: &str) -> Result<Self> {
        let corrupt = |reason: String| Error::CorruptFile {
            path: path.to_string(),
            reason,
        };
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "hho-mlp-model v1")) => {}
            _ => return Err(corrupt("missing `hho-mlp-model v1` header".to_string())),
        }

        let mut topology: Option<MlpTopology> = None;
        let mut mask: Option<Option<FeatureMask>> = None;
        let mut range: Option<(f64, f64)> = None;
        let mut fitted_rows: Option<usize> = None;
        let mut names = Vec::new();
        let mut mins = Vec::new();
        let mut maxs = Vec::new();
        let mut params: Option<Vec<f64>> = None;
        let mut history: Option<Vec<f64>> = None;

        for (idx, line) in lines {
            let line_no = idx + 1;
            if line.starts_with("digest ") || line.trim().is_empty() {
                continue;
            }
            let (tag, rest) = line.split_once(' ').ok_or_else(|| {
                corrupt(format!("line {line_no}: expected `<tag> <values>`"))
            })?;
            match tag {
                "topology" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    if parts.len() != 3 {
                        return Err(corrupt(format!(
                            "line {line_no}: topology needs `<in> <hidden,..> <out>`"
                        )));
                    }
                    let input = textfile::parse_usize(parts[0], path, line_no)?;
                    let hidden: Result<Vec<usize>> = parts[1]
                        .split(',')
                        .map(|t| textfile::parse_usize(t, path, line_no))
                        .collect();
                    let output = textfile::parse_usize(parts[2], path, line_no)?;
                    topology = Some(MlpTopology::new(input, hidden?, output)?);
                }
                "mask" => {
                    if rest.trim() == "none" {
                        mask = Some(None);
                    } else {
                        let bits: Result<Vec<bool>> = rest
                            .split_whitespace()
                            .map(|t| match t {
                                "0" => Ok(false),
                                "1" => Ok(true),
                                other => Err(Error::Parse {
                                    path: path.to_string(),
                                    line: line_no,
                                    message: format!("mask bit must be 0 or 1, found {other:?}"),
                                }),
                            })
                            .collect();
                        mask = Some(Some(FeatureMask::new(bits?)?));
                    }
                }
                "range" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    if parts.len() != 2 {
                        return Err(corrupt(format!("line {line_no}: range needs two values")));
                    }
                    range = Some((
                        textfile::parse_f64(parts[0], path, line_no)?,
                        textfile::parse_f64(parts[1], path, line_no)?,
                    ));
                }
                "fitted_rows" => {
                    fitted_rows = Some(textfile::parse_usize(rest.trim(), path, line_no)?);
                }
                "stat" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    if parts.len() != 3 {
                        return Err(corrupt(format!(
                            "line {line_no}: stat needs `<name> <min> <max>`"
                        )));
                    }
                    names.push(parts[0].to_string());
                    mins.push(textfile::parse_f64(parts[1], path, line_no)?);
                    maxs.push(textfile::parse_f64(parts[2], path, line_no)?);
                }
                "params" => {
                    let values: Result<Vec<f64>> = rest
                        .split_whitespace()
                        .map(|t| textfile::parse_f64(t, path, line_no))
                        .collect();
                    params = Some(values?);
                }
                "history" => {
                    let values: Result<Vec<f64>> = rest
                        .split_whitespace()
                        .map(|t| textfile::parse_f64(t, path, line_no))
                        .collect();
                    history = Some(values?);
                }
                other => {
                    return Err(corrupt(format!("line {line_no}: unknown tag {other:?}")));
                }
            }
        }

        let topology = topology.ok_or_else(|| corrupt("missing topology".to_string()))?;
        let (na, nb) = range.ok_or_else(|| corrupt("missing range".to_string()))?;
        let params_flat = params.ok_or_else(|| corrupt("missing params".to_string()))?;
        Ok(TrainedModel {
            params: MlpParams::from_flat(&topology, params_flat)?,
            topology,
            feature_mask: mask.ok_or_else(|| corrupt("missing mask".to_string()))?,
            feature_names: names,
            norm_stats: NormStats {
                mins,
                maxs,
                na,
                nb,
                fitted_rows: fitted_rows
                    .ok_or_else(|| corrupt("missing fitted_rows".to_string()))?,
            },
            fitness_history: history.ok_or_else(|| corrupt("missing history".to_string()))?,
        })
    }
}
