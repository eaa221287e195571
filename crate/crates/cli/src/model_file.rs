//! Versioned JSON file holding one fitted model.

use std::path::Path;

use anyhow::{bail, Context};
use plknn::data::MinMaxScaler;
use plknn::{Classifier, KnnModel, MknnModel, PlknnModel, Prediction};
use serde::{Deserialize, Serialize};

pub const MODEL_FORMAT: &str = "plknn-model";
pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FittedModel {
    Plknn(PlknnModel),
    Mknn(MknnModel),
    Knn(KnnModel),
}

impl FittedModel {
    pub fn classifier(&self) -> &dyn Classifier {
        match self {
            FittedModel::Plknn(m) => m,
            FittedModel::Mknn(m) => m,
            FittedModel::Knn(m) => m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format: String,
    pub version: u32,
    pub dataset: String,
    pub class_names: Vec<String>,
    /// Fitted on the training data when min-max scaling was requested;
    /// applied to every query before prediction.
    pub scaler: Option<MinMaxScaler>,
    pub model: FittedModel,
}

impl ModelFile {
    pub fn new(
        dataset: &str,
        class_names: Vec<String>,
        scaler: Option<MinMaxScaler>,
        model: FittedModel,
    ) -> Self {
        Self {
            format: MODEL_FORMAT.into(),
            version: MODEL_VERSION,
            dataset: dataset.into(),
            class_names,
            scaler,
            model,
        }
    }

    pub fn dim(&self) -> usize {
        self.model.classifier().dim()
    }

    pub fn predict(&self, query: &[f64]) -> anyhow::Result<Prediction> {
        let d = self.dim();
        if query.len() != d {
            bail!("query has {} features, model expects d = {d}", query.len());
        }
        let mut q = query.to_vec();
        if let Some(s) = &self.scaler {
            s.transform_row(&mut q)?;
        }
        Ok(self.model.classifier().predict(&q)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model serializes");
        s.push('\n');
        s
    }

    pub fn save(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, self.to_json()).with_context(|| format!("writing {}", path.display()))
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let probe: serde_json::Value = serde_json::from_str(&text)
            .with_context(|| format!("{} is not JSON", path.display()))?;
        if probe.get("format").and_then(|f| f.as_str()) != Some(MODEL_FORMAT) {
            bail!("{} is not a {MODEL_FORMAT} file", path.display());
        }
        let version = probe.get("version").and_then(|v| v.as_u64());
        if version != Some(u64::from(MODEL_VERSION)) {
            bail!(
                "{}: model file version {version:?} is not supported (expected {MODEL_VERSION})",
                path.display()
            );
        }
        serde_json::from_value(probe).with_context(|| format!("decoding {}", path.display()))
    }
}
