//! Fitted models and prediction.
//!
//! [`PlknnModel`] is the parameterless classifier: per-class median centroids,
//! inverse-distance training weights, and a query-dependent neighbor set cut
//! out of the circle around the query by the half-space facing the nearest
//! centroid. [`MknnModel`] covers the SMKNN/LMKNN baselines, which use mean
//! centroids and a full circle. [`KnnModel`] is plain majority-vote k-NN.

mod centroid;
mod knn;
mod mknn;
mod plknn;
mod scoring;

use serde::{Deserialize, Serialize};

pub use centroid::{class_centroid_mean, class_centroid_median, training_weight, EPSILON};
pub use knn::{fit_knn, tune_k, KnnModel, DEFAULT_K_MAX};
pub use mknn::{fit_mknn, MknnModel, MknnVariant};
pub use plknn::{fit_plknn, PlknnModel};
pub use scoring::circle_members;

pub(crate) use centroid::median_in_place as median_of;

use crate::dataset::Dataset;
use crate::error::Result;

/// Outcome of classifying one query.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    /// Decided class index.
    pub label: usize,
    /// Normalized per-class scores. All zero when `fallback_used`.
    pub scores: Vec<f64>,
    /// True when no training sample was selected and the label came from
    /// the nearest centroid instead of the weighted vote.
    pub fallback_used: bool,
}

/// Common prediction surface shared by every fitted model.
pub trait Classifier {
    fn predict(&self, query: &[f64]) -> Result<Prediction>;

    fn class_count(&self) -> usize;

    fn dim(&self) -> usize;

    fn predict_labels(&self, queries: &Dataset) -> Result<Vec<usize>> {
        queries
            .rows()
            .map(|q| self.predict(q).map(|p| p.label))
            .collect()
    }
}

/// Index of the largest value, lowest index among ties.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Index of the smallest value, lowest index among ties.
pub(crate) fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v < values[best] {
            best = i;
        }
    }
    best
}
