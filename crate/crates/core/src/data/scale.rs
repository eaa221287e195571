use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{check_dims, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scaling {
    #[default]
    None,
    #[serde(alias = "minmax")]
    MinMax,
}

/// Per-feature affine map onto [0, 1] fitted on one partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinMaxScaler {
    min: Vec<f64>,
    range: Vec<f64>,
}

impl MinMaxScaler {
    pub fn fit(train: &Dataset) -> Self {
        let d = train.dim();
        let mut min = vec![f64::INFINITY; d];
        let mut max = vec![f64::NEG_INFINITY; d];
        for row in train.rows() {
            for j in 0..d {
                min[j] = min[j].min(row[j]);
                max[j] = max[j].max(row[j]);
            }
        }
        let range = min.iter().zip(&max).map(|(lo, hi)| hi - lo).collect();
        Self { min, range }
    }

    /// Zero-range features map to 0. Values outside the fitted range land
    /// outside [0, 1] and are not clipped.
    pub fn transform(&self, data: &Dataset) -> Result<Dataset> {
        check_dims(self.min.len(), data.dim())?;
        Ok(data.map_features(|j, v| self.apply(j, v)))
    }

    /// Same map applied to a single feature vector in place.
    pub fn transform_row(&self, row: &mut [f64]) -> Result<()> {
        check_dims(self.min.len(), row.len())?;
        for (j, v) in row.iter_mut().enumerate() {
            *v = self.apply(j, *v);
        }
        Ok(())
    }

    fn apply(&self, j: usize, v: f64) -> f64 {
        if self.range[j] > 0.0 {
            (v - self.min[j]) / self.range[j]
        } else {
            0.0
        }
    }
}

/// Fits on `train` and applies the same map to `others`.
pub fn min_max_scale(train: &Dataset, others: &[&Dataset]) -> Result<(Dataset, Vec<Dataset>)> {
    let scaler = MinMaxScaler::fit(train);
    let scaled = others
        .iter()
        .map(|d| scaler.transform(d))
        .collect::<Result<Vec<_>>>()?;
    Ok((scaler.transform(train)?, scaled))
}
