//! Benchmark output files and reading them back.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};

use crate::analysis::Analysis;
use crate::benchmark::{BenchmarkResult, DatasetFailure, FoldRecord};
use crate::config::{ExperimentConfig, TestMetric};
use crate::report::{render, ReportFormat};

/// Version of the results layout. `report` refuses anything else.
pub const SCHEMA_VERSION: u32 = 1;

pub const RESULTS_FILE: &str = "results.csv";
pub const SUMMARY_FILE: &str = "summary.txt";
pub const WILCOXON_FILE: &str = "wilcoxon.csv";
pub const DIAGRAM_FILE: &str = "nemenyi.svg";
pub const PROVENANCE_FILE: &str = "provenance.txt";

const RESULTS_HEADER: [&str; 5] = ["dataset", "method", "fold", "accuracy", "f1"];

/// What `provenance.txt` records about a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub schema_version: u32,
    pub version: String,
    pub seed: u64,
    pub folds: usize,
    pub k_max: usize,
    pub alpha: f64,
    pub metric: TestMetric,
    pub config_sha256: String,
    pub datasets: Vec<String>,
    pub methods: Vec<String>,
    pub failures: Vec<DatasetFailure>,
}

impl Provenance {
    pub fn new(config: &ExperimentConfig, result: &BenchmarkResult) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: config.seed,
            folds: config.folds,
            k_max: config.k_max,
            alpha: config.alpha,
            metric: config.wilcoxon_metric,
            config_sha256: config.digest(),
            datasets: result.succeeded().into_iter().map(String::from).collect(),
            methods: config
                .methods
                .iter()
                .map(|m| m.name().to_string())
                .collect(),
            failures: result.failures.clone(),
        }
    }

    fn render(&self) -> String {
        let mut out = format!(
            "schema_version = {}\nversion = {}\nseed = {}\nfolds = {}\nk_max = {}\nalpha = {}\n\
             wilcoxon_metric = {}\nconfig_sha256 = {}\ndatasets = {}\nmethods = {}\n",
            self.schema_version,
            self.version,
            self.seed,
            self.folds,
            self.k_max,
            self.alpha,
            self.metric,
            self.config_sha256,
            self.datasets.join(","),
            self.methods.join(","),
        );
        for f in &self.failures {
            let message = f.message.replace(['\n', '\r'], " ");
            out.push_str(&format!("failed.{} = {}\n", f.dataset, message));
        }
        out
    }

    fn parse(text: &str) -> anyhow::Result<Self> {
        let mut fields = std::collections::HashMap::new();
        let mut failures = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(" = ")
                .with_context(|| format!("line {}: expected `key = value`", n + 1))?;
            match key.strip_prefix("failed.") {
                Some(dataset) => failures.push(DatasetFailure {
                    dataset: dataset.to_string(),
                    message: value.to_string(),
                }),
                None => {
                    fields.insert(key.to_string(), value.to_string());
                }
            }
        }
        let get = |k: &str| {
            fields
                .get(k)
                .map(String::as_str)
                .with_context(|| format!("provenance lacks `{k}`"))
        };
        let list = |k: &str| -> anyhow::Result<Vec<String>> {
            let v = get(k)?;
            Ok(if v.is_empty() {
                Vec::new()
            } else {
                v.split(',').map(String::from).collect()
            })
        };
        let schema_version: u32 = get("schema_version")?.parse().context("schema_version")?;
        if schema_version != SCHEMA_VERSION {
            bail!(
                "results schema version {schema_version} is not supported (this build reads version {SCHEMA_VERSION})"
            );
        }
        Ok(Self {
            schema_version,
            version: get("version")?.to_string(),
            seed: get("seed")?.parse().context("seed")?,
            folds: get("folds")?.parse().context("folds")?,
            k_max: get("k_max")?.parse().context("k_max")?,
            alpha: get("alpha")?.parse().context("alpha")?,
            metric: get("wilcoxon_metric")?.parse()?,
            config_sha256: get("config_sha256")?.to_string(),
            datasets: list("datasets")?,
            methods: list("methods")?,
            failures,
        })
    }
}

/// Writes all five output files into `dir`, creating it if needed.
pub fn write_outputs(
    dir: &Path,
    config: &ExperimentConfig,
    result: &BenchmarkResult,
) -> anyhow::Result<Analysis> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let provenance = Provenance::new(config, result);
    let analysis = Analysis::from_records(
        &result.records,
        &provenance.datasets,
        &provenance.methods,
        config.alpha,
        config.wilcoxon_metric,
    )?;

    let mut w = csv::Writer::from_path(dir.join(RESULTS_FILE))?;
    w.write_record(RESULTS_HEADER)?;
    for r in &result.records {
        w.write_record([
            r.dataset.clone(),
            r.method.clone(),
            r.fold.to_string(),
            r.accuracy.to_string(),
            r.f1.to_string(),
        ])?;
    }
    w.flush()?;

    write_wilcoxon(&dir.join(WILCOXON_FILE), &analysis)?;
    fs::write(
        dir.join(SUMMARY_FILE),
        render(&analysis, &provenance.failures, ReportFormat::Text),
    )?;
    fs::write(dir.join(DIAGRAM_FILE), diagram(&analysis))?;
    fs::write(dir.join(PROVENANCE_FILE), provenance.render())?;
    Ok(analysis)
}

fn write_wilcoxon(path: &Path, analysis: &Analysis) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "dataset",
        "method",
        "reference",
        "metric",
        "statistic",
        "p_value",
        "n_effective",
        "reject",
    ])?;
    for c in &analysis.vs_reference {
        w.write_record([
            c.dataset.clone(),
            c.method.clone(),
            c.reference.clone(),
            analysis.metric.to_string(),
            c.result.statistic.to_string(),
            c.result.p_value.to_string(),
            c.result.n_effective.to_string(),
            c.result.reject_at_alpha.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn diagram(analysis: &Analysis) -> String {
    match (&analysis.mean_ranks, analysis.critical_difference) {
        (Some(ranks), Some(cd)) => plknn::render_cd_diagram(ranks, cd, &analysis.methods),
        _ => concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="640" height="40" font-family="sans-serif" font-size="12">"#,
            "\n",
            r#"<text x="10" y="24">No critical difference: needs 2 to 10 methods, one dataset, and alpha 0.05 or 0.10.</text>"#,
            "\n</svg>\n"
        )
        .to_string(),
    }
}

/// Results directory contents needed to rebuild the analysis.
pub struct StoredResults {
    pub provenance: Provenance,
    pub records: Vec<FoldRecord>,
}

/// Reads `results.csv` and `provenance.txt`. `path` may name the results
/// directory or the `results.csv` inside it.
pub fn read_results(path: &Path) -> anyhow::Result<StoredResults> {
    let dir: PathBuf = if path.is_dir() {
        path.to_path_buf()
    } else {
        path.parent().unwrap_or(Path::new(".")).to_path_buf()
    };
    let results = if path.is_dir() {
        dir.join(RESULTS_FILE)
    } else {
        path.to_path_buf()
    };
    let prov_path = dir.join(PROVENANCE_FILE);
    let text = fs::read_to_string(&prov_path)
        .with_context(|| format!("reading {}", prov_path.display()))?;
    let provenance =
        Provenance::parse(&text).with_context(|| format!("in {}", prov_path.display()))?;

    let mut reader = csv::Reader::from_path(&results)
        .with_context(|| format!("reading {}", results.display()))?;
    if reader.headers()?.iter().ne(RESULTS_HEADER) {
        bail!(
            "{}: expected header {}",
            results.display(),
            RESULTS_HEADER.join(",")
        );
    }
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let field = |k: usize| {
            row.get(k)
                .with_context(|| format!("line {line}: too few fields"))
        };
        records.push(FoldRecord {
            dataset: field(0)?.to_string(),
            method: field(1)?.to_string(),
            fold: field(2)?
                .parse()
                .with_context(|| format!("line {line}: fold"))?,
            accuracy: field(3)?
                .parse()
                .with_context(|| format!("line {line}: accuracy"))?,
            f1: field(4)?
                .parse()
                .with_context(|| format!("line {line}: f1"))?,
        });
    }
    Ok(StoredResults {
        provenance,
        records,
    })
}
