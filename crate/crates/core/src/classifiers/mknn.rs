use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::centroid::{class_centroid_mean, fit_centroids};
use super::scoring::{centroid_distances, circle_members, decide, weighted_scores};
use super::{argmin, Classifier, Prediction};
use crate::dataset::Dataset;
use crate::distance::require_dim;
use crate::error::{Error, Result};

/// Which centroid distance sets the circle radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MknnVariant {
    /// SMKNN: distance to the nearest class centroid.
    Smallest,
    /// LMKNN: distance to the farthest class centroid.
    Largest,
}

impl fmt::Display for MknnVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MknnVariant::Smallest => "smallest",
            MknnVariant::Largest => "largest",
        })
    }
}

impl FromStr for MknnVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smallest" | "smknn" => Ok(MknnVariant::Smallest),
            "largest" | "lmknn" => Ok(MknnVariant::Largest),
            other => Err(Error::Config(format!("unknown MKNN variant `{other}`"))),
        }
    }
}

/// Fitted SMKNN/LMKNN baseline: mean centroids, full-circle neighbor set,
/// same weighted vote as [`PlknnModel`](super::PlknnModel).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MknnModel {
    variant: MknnVariant,
    centroids: Vec<Vec<f64>>,
    weights: Vec<f64>,
    train: Dataset,
}

pub fn fit_mknn(train: &Dataset, variant: MknnVariant) -> Result<MknnModel> {
    MknnModel::fit(train, variant)
}

impl MknnModel {
    pub fn fit(train: &Dataset, variant: MknnVariant) -> Result<Self> {
        let (centroids, weights) = fit_centroids(train, class_centroid_mean)?;
        Ok(Self {
            variant,
            centroids,
            weights,
            train: train.clone(),
        })
    }

    pub fn variant(&self) -> MknnVariant {
        self.variant
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

    /// Circle radius for `query`: min or max Manhattan distance to the
    /// class centroids depending on the variant.
    pub fn radius(&self, query: &[f64]) -> Result<f64> {
        require_dim(self.train.dim(), query)?;
        let d = centroid_distances(&self.centroids, query);
        Ok(match self.variant {
            MknnVariant::Smallest => d.iter().copied().fold(f64::INFINITY, f64::min),
            MknnVariant::Largest => d.iter().copied().fold(0.0, f64::max),
        })
    }

    /// Every training sample inside the circle, in training order.
    pub fn neighbors(&self, query: &[f64]) -> Result<Vec<usize>> {
        let r = self.radius(query)?;
        circle_members(&self.train, query, r)
    }
}

impl Classifier for MknnModel {
    fn predict(&self, query: &[f64]) -> Result<Prediction> {
        let neighbors = self.neighbors(query)?;
        let scores = weighted_scores(&self.train, &self.weights, query, &neighbors);
        let nearest = argmin(&centroid_distances(&self.centroids, query));
        Ok(decide(scores, neighbors.is_empty(), nearest))
    }

    fn class_count(&self) -> usize {
        self.train.class_count()
    }

    fn dim(&self) -> usize {
        self.train.dim()
    }
}
