use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A labelled feature matrix.
///
/// Features are stored row-major in one buffer; `row(i)` borrows sample `i`.
/// Labels are contiguous class indices into `class_names`.
///
/// A dataset built with [`Dataset::new`] has at least two classes and every
/// class appears at least once. Partitions produced by [`Dataset::subset`]
/// keep the parent's class schema but may be missing some classes, which is
/// what the train/validation/test splits of a small class look like.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    name: String,
    dim: usize,
    features: Vec<f64>,
    labels: Vec<usize>,
    class_names: Vec<String>,
    feature_names: Vec<String>,
}

impl Dataset {
    /// Builds a dataset from rows, checking every invariant.
    pub fn new(
        name: impl Into<String>,
        rows: Vec<Vec<f64>>,
        labels: Vec<usize>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        let dim = rows.first().map(Vec::len).unwrap_or(0);
        let mut features = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidDataset(format!(
                    "row {i} has {} features, expected {dim}",
                    row.len()
                )));
            }
            features.extend_from_slice(row);
        }
        let feature_names = (0..dim).map(|j| format!("x{j}")).collect();
        let ds = Self::from_parts(name, dim, features, labels, class_names, feature_names)?;
        ds.check_complete()?;
        Ok(ds)
    }

    /// Builds a dataset from a row-major buffer without requiring that every
    /// class is present.
    pub fn from_parts(
        name: impl Into<String>,
        dim: usize,
        features: Vec<f64>,
        labels: Vec<usize>,
        class_names: Vec<String>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDataset(
                "feature dimension must be at least 1".into(),
            ));
        }
        if features.len() != labels.len() * dim {
            return Err(Error::InvalidDataset(format!(
                "{} feature values do not fill {} rows of dimension {dim}",
                features.len(),
                labels.len()
            )));
        }
        if feature_names.len() != dim {
            return Err(Error::InvalidDataset(format!(
                "{} feature names for dimension {dim}",
                feature_names.len()
            )));
        }
        if class_names.len() < 2 {
            return Err(Error::InvalidDataset(format!(
                "at least 2 classes are required, found {}",
                class_names.len()
            )));
        }
        if let Some((i, &y)) = labels
            .iter()
            .enumerate()
            .find(|(_, &y)| y >= class_names.len())
        {
            return Err(Error::InvalidDataset(format!(
                "label {y} of row {i} is outside [0, {})",
                class_names.len()
            )));
        }
        if let Some(pos) = features.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite value in row {}, feature {}",
                pos / dim,
                pos % dim
            )));
        }
        Ok(Self {
            name: name.into(),
            dim,
            features,
            labels,
            class_names,
            feature_names,
        })
    }

    /// Fails unless every class has at least one sample and `m >= n`.
    pub fn check_complete(&self) -> Result<()> {
        if let Some(index) = self.class_counts().iter().position(|&c| c == 0) {
            return Err(Error::EmptyClass {
                index,
                name: self.class_names[index].clone(),
            });
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn class_count(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn with_feature_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::InvalidDataset(format!(
                "{} feature names for dimension {}",
                names.len(),
                self.dim
            )));
        }
        self.feature_names = names;
        Ok(self)
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.features.chunks_exact(self.dim)
    }

    #[inline]
    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.class_count()];
        for &y in &self.labels {
            counts[y] += 1;
        }
        counts
    }

    /// Index of the least frequent class; lowest index on ties.
    pub fn minority_class(&self) -> usize {
        let counts = self.class_counts();
        let mut best = 0;
        for (i, &c) in counts.iter().enumerate() {
            if c < counts[best] {
                best = i;
            }
        }
        best
    }

    /// Rows at `indices`, in that order, under the same class schema.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        let mut features = Vec::with_capacity(indices.len() * self.dim);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            features.extend_from_slice(self.row(i));
            labels.push(self.labels[i]);
        }
        Dataset {
            name: self.name.clone(),
            dim: self.dim,
            features,
            labels,
            class_names: self.class_names.clone(),
            feature_names: self.feature_names.clone(),
        }
    }

    /// Applies `f` to every feature value in place of a copy.
    pub(crate) fn map_features(&self, mut f: impl FnMut(usize, f64) -> f64) -> Dataset {
        let dim = self.dim;
        let features = self
            .features
            .iter()
            .enumerate()
            .map(|(pos, &v)| f(pos % dim, v))
            .collect();
        Dataset {
            features,
            ..self.clone()
        }
    }

    /// Multiplies every feature by the same factor.
    pub fn scaled(&self, factor: f64) -> Dataset {
        self.map_features(|_, v| v * factor)
    }
}
