use serde::{Deserialize, Serialize};

use super::centroid::{class_centroid_median, fit_centroids};
use super::scoring::{decide, nearest, weighted_scores};
use super::{Classifier, Prediction};
use crate::dataset::Dataset;
use crate::distance::{halfspace_unchecked, manhattan_unchecked, require_dim};
use crate::error::{Error, Result};

/// Fitted parameterless k-NN.
///
/// Training keeps every sample, one component-wise median centroid per
/// class, and for each sample the inverse Euclidean distance to its own
/// class centroid. Prediction picks the centroid nearest to the query in
/// Manhattan distance, keeps the training samples inside the circle of that
/// radius that lie on the centroid's side of the query, and runs a
/// distance- and weight-scaled vote over them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlknnModel {
    centroids: Vec<Vec<f64>>,
    weights: Vec<f64>,
    train: Dataset,
}

pub fn fit_plknn(train: &Dataset) -> Result<PlknnModel> {
    PlknnModel::fit(train)
}

impl PlknnModel {
    pub fn fit(train: &Dataset) -> Result<Self> {
        let (centroids, weights) = fit_centroids(train, class_centroid_median)?;
        Ok(Self {
            centroids,
            weights,
            train: train.clone(),
        })
    }

    pub fn centroids(&self) -> &[Vec<f64>] {
        &self.centroids
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn train(&self) -> &Dataset {
        &self.train
    }

    /// Copy of the model with every training weight multiplied by `factor`.
    pub fn with_scaled_weights(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::Config(format!(
                "weight factor must be positive, got {factor}"
            )));
        }
        let mut scaled = self.clone();
        for w in &mut scaled.weights {
            *w *= factor;
        }
        Ok(scaled)
    }

    /// Class of the centroid closest to `query` in Manhattan distance and
    /// that distance. Lowest class index wins ties.
    pub fn nearest_centroid(&self, query: &[f64]) -> Result<(usize, f64)> {
        require_dim(self.train.dim(), query)?;
        Ok(nearest(&self.centroids, query))
    }

    /// Training samples `t` with `D_M(s, t) <= radius` and
    /// `<c* - s, t - s> >= 0`, scanned over every class.
    pub fn select_semicircle(
        &self,
        query: &[f64],
        cstar: usize,
        radius: f64,
    ) -> Result<Vec<usize>> {
        require_dim(self.train.dim(), query)?;
        let c = self
            .centroids
            .get(cstar)
            .ok_or_else(|| Error::Config(format!("no centroid with index {cstar}")))?;
        Ok(self
            .train
            .rows()
            .enumerate()
            .filter(|(_, t)| {
                manhattan_unchecked(query, t) <= radius && halfspace_unchecked(query, c, t) >= 0.0
            })
            .map(|(i, _)| i)
            .collect())
    }

    /// Normalized class scores from a neighbor set; all zero when empty.
    pub fn class_scores(&self, query: &[f64], neighbors: &[usize]) -> Result<Vec<f64>> {
        require_dim(self.train.dim(), query)?;
        if let Some(&bad) = neighbors.iter().find(|&&j| j >= self.train.len()) {
            return Err(Error::Config(format!("neighbor index {bad} out of range")));
        }
        Ok(weighted_scores(
            &self.train,
            &self.weights,
            query,
            neighbors,
        ))
    }
}

impl Classifier for PlknnModel {
    fn predict(&self, query: &[f64]) -> Result<Prediction> {
        let (cstar, radius) = self.nearest_centroid(query)?;
        let neighbors = self.select_semicircle(query, cstar, radius)?;
        let scores = weighted_scores(&self.train, &self.weights, query, &neighbors);
        Ok(decide(scores, neighbors.is_empty(), cstar))
    }

    fn class_count(&self) -> usize {
        self.train.class_count()
    }

    fn dim(&self) -> usize {
        self.train.dim()
    }
}
