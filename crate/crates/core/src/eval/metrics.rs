use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How F1 is averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum F1Mode {
    /// F1 of a single positive class. Requires exactly two classes.
    Binary { positive: usize },
    /// Unweighted mean of per-class F1 over every class in the schema.
    Macro,
}

fn check_lengths(predicted: &[usize], truth: &[usize]) -> Result<()> {
    if predicted.is_empty() {
        return Err(Error::EmptyInput("no predictions to score"));
    }
    if predicted.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            found: predicted.len(),
        });
    }
    Ok(())
}

/// Fraction of positions where the prediction equals the truth.
pub fn accuracy(predicted: &[usize], truth: &[usize]) -> Result<f64> {
    check_lengths(predicted, truth)?;
    let hits = predicted.iter().zip(truth).filter(|(p, t)| p == t).count();
    Ok(hits as f64 / truth.len() as f64)
}

/// F1 score. A class with no true positives, false positives or false
/// negatives scores 0.
pub fn f1_score(
    predicted: &[usize],
    truth: &[usize],
    class_count: usize,
    mode: F1Mode,
) -> Result<f64> {
    check_lengths(predicted, truth)?;
    if let Some(&bad) = predicted.iter().chain(truth).find(|&&y| y >= class_count) {
        return Err(Error::Config(format!(
            "label {bad} outside [0, {class_count})"
        )));
    }
    match mode {
        F1Mode::Binary { positive } => {
            if class_count != 2 {
                return Err(Error::Config(format!(
                    "binary F1 needs 2 classes, dataset has {class_count}"
                )));
            }
            if positive >= 2 {
                return Err(Error::Config(format!(
                    "positive class {positive} outside [0, 2)"
                )));
            }
            Ok(class_f1(predicted, truth, positive))
        }
        F1Mode::Macro => {
            let total: f64 = (0..class_count)
                .map(|c| class_f1(predicted, truth, c))
                .sum();
            Ok(total / class_count as f64)
        }
    }
}

fn class_f1(predicted: &[usize], truth: &[usize], class: usize) -> f64 {
    let (mut tp, mut fp, mut fn_) = (0usize, 0usize, 0usize);
    for (&p, &t) in predicted.iter().zip(truth) {
        match (p == class, t == class) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
            (false, false) => {}
        }
    }
    let denom = 2 * tp + fp + fn_;
    if denom == 0 {
        0.0
    } else {
        (2 * tp) as f64 / denom as f64
    }
}

/// Sample mean and sample standard deviation (n - 1 denominator, 0 for a
/// single value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

/// Per-fold accuracy and F1 with their summaries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub folds: Vec<(f64, f64)>,
    pub accuracy_mean: f64,
    pub accuracy_std: f64,
    pub f1_mean: f64,
    pub f1_std: f64,
}

impl MetricReport {
    pub fn from_folds(folds: Vec<(f64, f64)>) -> Self {
        let acc: Vec<f64> = folds.iter().map(|f| f.0).collect();
        let f1: Vec<f64> = folds.iter().map(|f| f.1).collect();
        let (accuracy_mean, accuracy_std) = mean_std(&acc);
        let (f1_mean, f1_std) = mean_std(&f1);
        Self {
            folds,
            accuracy_mean,
            accuracy_std,
            f1_mean,
            f1_std,
        }
    }

    pub fn accuracies(&self) -> Vec<f64> {
        self.folds.iter().map(|f| f.0).collect()
    }

    pub fn f1s(&self) -> Vec<f64> {
        self.folds.iter().map(|f| f.1).collect()
    }
}
