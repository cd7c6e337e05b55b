//! Detection-quality measures over a binary confusion matrix: accuracy,
//! sensitivity, specificity, and the squared-error pair.
//!
//! Degenerate denominators (no positive rows, no negative rows) yield an
//! explicit not-applicable value rather than a silent zero, so aggregate
//! tables cannot be corrupted by absent classes.

use crate::error::{Error, Result};

/// Tallies of a binary classifier's outcomes. Positive = intrusion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConfusionCounts {
    pub true_positives: u64,
    pub true_negatives: u64,
    pub false_positives: u64,
    pub false_negatives: u64,
}

impl ConfusionCounts {
    pub fn from_predictions(predicted: &[u8], actual: &[u8]) -> Result<Self> {
        if predicted.is_empty() {
            return Err(Error::EmptyInput("predictions"));
        }
        if predicted.len() != actual.len() {
            return Err(Error::DimensionMismatch {
                context: "predictions vs labels",
                expected: actual.len(),
                actual: predicted.len(),
            });
        }
        let mut counts = ConfusionCounts::default();
        for (&p, &a) in predicted.iter().zip(actual) {
            counts.record(p != 0, a != 0);
        }
        Ok(counts)
    }

    pub fn record(&mut self, predicted_positive: bool, actually_positive: bool) {
        match (predicted_positive, actually_positive) {
            (true, true) => self.true_positives += 1,
            (true, false) => self.false_positives += 1,
            (false, true) => self.false_negatives += 1,
            (false, false) => self.true_negatives += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.true_positives + self.true_negatives + self.false_positives + self.false_negatives
    }
}

/// (TP + TN) / total.
pub fn accuracy(counts: &ConfusionCounts) -> Result<f64> {
    if counts.total() == 0 {
        return Err(Error::EmptyInput("confusion counts"));
    }
    Ok((counts.true_positives + counts.true_negatives) as f64 / counts.total() as f64)
}

/// TP / (TP + FN); `None` when no positive rows exist.
pub fn sensitivity(counts: &ConfusionCounts) -> Option<f64> {
    let positives = counts.true_positives + counts.false_negatives;
    if positives == 0 {
        None
    } else {
        Some(counts.true_positives as f64 / positives as f64)
    }
}

/// TN / (TN + FP); `None` when no negative rows exist.
pub fn specificity(counts: &ConfusionCounts) -> Option<f64> {
    let negatives = counts.true_negatives + counts.false_positives;
    if negatives == 0 {
        None
    } else {
        Some(counts.true_negatives as f64 / negatives as f64)
    }
}

/// Mean squared residual of raw outputs against 0/1 labels.
pub fn mse(predictions: &[f64], labels: &[u8]) -> Result<f64> {
    if predictions.is_empty() {
        return Err(Error::EmptyInput("predictions"));
    }
    if predictions.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            context: "predictions vs labels",
            expected: labels.len(),
            actual: predictions.len(),
        });
    }
    let sum: f64 = predictions
        .iter()
        .zip(labels)
        .map(|(&p, &l)| {
            let r = p - f64::from(l);
            r * r
        })
        .sum();
    Ok(sum / predictions.len() as f64)
}

/// Square root of [`mse`].
pub fn rmse(predictions: &[f64], labels: &[u8]) -> Result<f64> {
    Ok(mse(predictions, labels)?.sqrt())
}

/// The five evaluation measures of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub counts: ConfusionCounts,
    pub accuracy: f64,
    pub sensitivity: Option<f64>,
    pub specificity: Option<f64>,
    pub mse: f64,
    pub rmse: f64,
}

impl MetricsReport {
    /// Assemble the report from tallies plus the raw network outputs that
    /// produced them.
    pub fn compute(counts: ConfusionCounts, predictions: &[f64], labels: &[u8]) -> Result<Self> {
        let mse_value = mse(predictions, labels)?;
        Ok(Self {
            counts,
            accuracy: accuracy(&counts)?,
            sensitivity: sensitivity(&counts),
            specificity: specificity(&counts),
            mse: mse_value,
            rmse: mse_value.sqrt(),
        })
    }

    fn fmt_option(value: Option<f64>) -> String {
        match value {
            Some(v) => v.to_string(),
            None => "na".to_string(),
        }
    }

    /// Structured plain-text form.
    pub fn to_text(&self) -> String {
        format!(
            "hho-mlp-metrics v1\n\
             tp {}\n\
             tn {}\n\
             fp {}\n\
             fn {}\n\
             accuracy {}\n\
             sensitivity {}\n\
             specificity {}\n\
             mse {}\n\
             rmse {}\n",
            self.counts.true_positives,
            self.counts.true_negatives,
            self.counts.false_positives,
            self.counts.false_negatives,
            self.accuracy,
            Self::fmt_option(self.sensitivity),
            Self::fmt_option(self.specificity),
            self.mse,
            self.rmse,
        )
    }

    /// Column names of [`MetricsReport::to_csv_row`], in order.
    pub fn csv_header() -> &'static str {
        "accuracy,sensitivity,specificity,mse,rmse"
    }

    /// One flat CSV row for table assembly; `na` marks not-applicable.
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.accuracy,
            Self::fmt_option(self.sensitivity),
            Self::fmt_option(self.specificity),
            self.mse,
            self.rmse
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(tp: u64, tn: u64, fp: u64, fn_: u64) -> ConfusionCounts {
        ConfusionCounts {
            true_positives: tp,
            true_negatives: tn,
            false_positives: fp,
            false_negatives: fn_,
        }
    }

    #[test]
    fn accuracy_examples() {
        assert_eq!(accuracy(&counts(50, 40, 5, 5)).unwrap(), 0.90);
        assert_eq!(accuracy(&counts(3, 7, 0, 0)).unwrap(), 1.0);
        assert_eq!(accuracy(&counts(0, 0, 1, 1)).unwrap(), 0.0);
        assert!(accuracy(&counts(0, 0, 0, 0)).is_err());
    }

    #[test]
    fn sensitivity_examples() {
        assert_eq!(sensitivity(&counts(9, 0, 0, 1)).unwrap(), 0.9);
        assert_eq!(sensitivity(&counts(4, 2, 3, 0)).unwrap(), 1.0);
        assert_eq!(sensitivity(&counts(0, 5, 2, 0)), None);
    }

    #[test]
    fn specificity_examples() {
        assert_eq!(specificity(&counts(1, 95, 5, 1)).unwrap(), 0.95);
        assert_eq!(specificity(&counts(1, 7, 0, 1)).unwrap(), 1.0);
        assert_eq!(specificity(&counts(3, 0, 0, 1)), None);
    }

    #[test]
    fn mse_rmse_examples() {
        let labels = [0u8, 1];
        assert_eq!(mse(&[0.0, 1.0], &labels).unwrap(), 0.0);
        assert_eq!(rmse(&[0.0, 1.0], &labels).unwrap(), 0.0);
        assert_eq!(mse(&[0.5, 0.5], &labels).unwrap(), 0.25);
        assert_eq!(rmse(&[0.5, 0.5], &labels).unwrap(), 0.5);

        let m = mse(&[0.9, 0.2, 0.6], &[1, 0, 1]).unwrap();
        let r = rmse(&[0.9, 0.2, 0.6], &[1, 0, 1]).unwrap();
        assert!((m - 0.07).abs() < 1e-15);
        assert!((r - 0.2645751311064591).abs() < 1e-15);

        assert!(mse(&[], &[]).is_err());
        assert!(mse(&[0.5], &[0, 1]).is_err());
    }

    #[test]
    fn from_predictions_hand_tally() {
        let c = ConfusionCounts::from_predictions(&[1, 1, 0, 0], &[1, 0, 0, 1]).unwrap();
        assert_eq!(c, counts(1, 1, 1, 1));
        assert_eq!(accuracy(&c).unwrap(), 0.5);
    }

    #[test]
    fn report_rmse_is_sqrt_of_mse() {
        let c = ConfusionCounts::from_predictions(&[1, 0, 1], &[1, 0, 0]).unwrap();
        let report = MetricsReport::compute(c, &[0.9, 0.2, 0.6], &[1, 0, 0]).unwrap();
        assert!((report.rmse - report.mse.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn csv_row_handles_not_applicable() {
        let c = counts(0, 4, 0, 0);
        let report = MetricsReport::compute(c, &[0.1; 4], &[0; 4]).unwrap();
        let row = report.to_csv_row();
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 5);
        assert_eq!(fields[1], "na");
        assert_eq!(MetricsReport::csv_header().split(',').count(), 5);
    }

    #[test]
    fn accuracy_is_prevalence_weighted_blend() {
        // With both classes present, accuracy equals sensitivity and
        // specificity weighted by class prevalence, so it always lies
        // between them.
        let c = counts(42, 31, 9, 18);
        let total = c.total() as f64;
        let prevalence = (c.true_positives + c.false_negatives) as f64 / total;
        let acc = accuracy(&c).unwrap();
        let blend = sensitivity(&c).unwrap() * prevalence
            + specificity(&c).unwrap() * (1.0 - prevalence);
        assert!((acc - blend).abs() < 1e-12);
    }

    #[test]
    fn permutation_invariance() {
        let preds = [1u8, 0, 1, 1, 0, 0];
        let labels = [1u8, 1, 0, 1, 0, 0];
        let raw = [0.8, 0.3, 0.7, 0.9, 0.2, 0.1];
        let base = MetricsReport::compute(
            ConfusionCounts::from_predictions(&preds, &labels).unwrap(),
            &raw,
            &labels,
        )
        .unwrap();

        // A fixed permutation of the row order.
        let perm = [3usize, 0, 5, 2, 4, 1];
        let preds_p: Vec<u8> = perm.iter().map(|&i| preds[i]).collect();
        let labels_p: Vec<u8> = perm.iter().map(|&i| labels[i]).collect();
        let raw_p: Vec<f64> = perm.iter().map(|&i| raw[i]).collect();
        let permuted = MetricsReport::compute(
            ConfusionCounts::from_predictions(&preds_p, &labels_p).unwrap(),
            &raw_p,
            &labels_p,
        )
        .unwrap();

        assert_eq!(base.accuracy, permuted.accuracy);
        assert_eq!(base.sensitivity, permuted.sensitivity);
        assert_eq!(base.specificity, permuted.specificity);
        assert!((base.mse - permuted.mse).abs() < 1e-15);
    }
}
