//! Declarative experiment configuration (TOML).

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context};
use plknn::data::{ImputePolicy, Scaling};
use plknn::{DatasetSpec, MknnVariant, SplitPlan, DEFAULT_K_MAX};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Plknn,
    Smknn,
    Lmknn,
    Knn,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Plknn, Method::Smknn, Method::Lmknn, Method::Knn];

    pub fn name(self) -> &'static str {
        match self {
            Method::Plknn => "plknn",
            Method::Smknn => "smknn",
            Method::Lmknn => "lmknn",
            Method::Knn => "knn",
        }
    }

    pub fn mknn_variant(self) -> Option<MknnVariant> {
        match self {
            Method::Smknn => Some(MknnVariant::Smallest),
            Method::Lmknn => Some(MknnVariant::Largest),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .with_context(|| format!("unknown method `{s}` (expected plknn, smknn, lmknn or knn)"))
    }
}

/// Per-fold metric the Wilcoxon comparisons run on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestMetric {
    #[default]
    F1,
    Accuracy,
}

impl fmt::Display for TestMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TestMetric::F1 => "f1",
            TestMetric::Accuracy => "accuracy",
        })
    }
}

impl FromStr for TestMetric {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s {
            "f1" => Ok(TestMetric::F1),
            "accuracy" => Ok(TestMetric::Accuracy),
            other => bail!("unknown metric `{other}` (expected f1 or accuracy)"),
        }
    }
}

fn default_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}
fn default_folds() -> usize {
    20
}
fn default_fractions() -> [f64; 3] {
    [0.70, 0.15, 0.15]
}
fn default_k_max() -> usize {
    DEFAULT_K_MAX
}
fn default_alpha() -> f64 {
    0.05
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(rename = "dataset")]
    pub datasets: Vec<DatasetSpec>,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default = "default_folds")]
    pub folds: usize,
    #[serde(default = "default_fractions")]
    pub fractions: [f64; 3],
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_k_max")]
    pub k_max: usize,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default)]
    pub wilcoxon_metric: TestMetric,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(datasets: Vec<DatasetSpec>) -> Self {
        Self {
            datasets,
            methods: default_methods(),
            folds: default_folds(),
            fractions: default_fractions(),
            seed: 0,
            k_max: default_k_max(),
            alpha: default_alpha(),
            wilcoxon_metric: TestMetric::default(),
            out: None,
        }
    }

    /// Parses a config file. Relative dataset paths resolve against the
    /// file's directory.
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut config: Self =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for spec in &mut config.datasets {
            if spec.path.is_relative() {
                spec.path = base.join(&spec.path);
            }
        }
        if let Some(out) = &mut config.out {
            if out.is_relative() {
                *out = base.join(&*out);
            }
        }
        Ok(config)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.datasets.is_empty() {
            bail!("config lists no datasets");
        }
        if self.methods.is_empty() {
            bail!("config lists no methods");
        }
        let mut seen = std::collections::HashSet::new();
        for d in &self.datasets {
            if !seen.insert(d.name.as_str()) {
                bail!("dataset name `{}` appears twice", d.name);
            }
        }
        let mut methods = self.methods.clone();
        methods.sort();
        methods.dedup();
        if methods.len() != self.methods.len() {
            bail!("a method is listed twice");
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            bail!("alpha = {} outside (0, 1)", self.alpha);
        }
        if self.k_max == 0 {
            bail!("k_max must be at least 1");
        }
        self.split_plan().validate()?;
        Ok(())
    }

    pub fn split_plan(&self) -> SplitPlan {
        SplitPlan {
            n_folds: self.folds,
            fractions: self.fractions,
            seed: self.seed,
        }
    }

    pub fn set_scaling(&mut self, scaling: Scaling) {
        for d in &mut self.datasets {
            d.scaling = scaling;
        }
    }

    pub fn set_impute(&mut self, impute: ImputePolicy) {
        for d in &mut self.datasets {
            d.impute = impute;
        }
    }

    /// SHA-256 over the canonical JSON form of the effective configuration.
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&canonical)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
