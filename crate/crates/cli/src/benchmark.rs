//! The repeated-split benchmark: every method on every fold of every
//! dataset, scored on the held-out test partition.

use plknn::data::{min_max_scale, split_fold, Scaling};
use plknn::{
    accuracy, f1_score, fit_knn, fit_mknn, fit_plknn, load_dataset, tune_k, Classifier, Dataset,
    DatasetSpec, F1Mode, SplitPlan,
};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, Method};

/// One row of `results.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldRecord {
    pub dataset: String,
    pub method: String,
    pub fold: usize,
    pub accuracy: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetFailure {
    pub dataset: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkResult {
    /// Ordered by dataset (config order), fold, then method (config order).
    pub records: Vec<FoldRecord>,
    /// `(dataset, fold, k)` chosen on the validation partition by k-NN.
    pub tuned_k: Vec<(String, usize, usize)>,
    pub failures: Vec<DatasetFailure>,
}

impl BenchmarkResult {
    pub fn succeeded(&self) -> Vec<&str> {
        let mut names: Vec<&str> = Vec::new();
        for r in &self.records {
            if names.last() != Some(&r.dataset.as_str()) {
                names.push(&r.dataset);
            }
        }
        names
    }
}

/// Scores of every method on one fold's test partition.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldOutcome {
    /// `(method, accuracy, f1)` in the requested method order.
    pub scores: Vec<(Method, f64, f64)>,
    /// k chosen by k-NN, when it ran.
    pub k: Option<usize>,
}

/// Runs the configured experiment. A dataset that fails to load, split or
/// fit is recorded in `failures` and contributes no records; the others
/// still run.
pub fn run_benchmark(config: &ExperimentConfig) -> anyhow::Result<BenchmarkResult> {
    config.validate()?;
    let plan = config.split_plan();
    let mut result = BenchmarkResult {
        records: Vec::new(),
        tuned_k: Vec::new(),
        failures: Vec::new(),
    };
    for spec in &config.datasets {
        match run_dataset(spec, &plan, &config.methods, config.k_max) {
            Ok(folds) => {
                for (fold, outcome) in folds.into_iter().enumerate() {
                    if let Some(k) = outcome.k {
                        result.tuned_k.push((spec.name.clone(), fold, k));
                    }
                    for (method, acc, f1) in outcome.scores {
                        result.records.push(FoldRecord {
                            dataset: spec.name.clone(),
                            method: method.name().to_string(),
                            fold,
                            accuracy: acc,
                            f1,
                        });
                    }
                }
            }
            Err(e) => result.failures.push(DatasetFailure {
                dataset: spec.name.clone(),
                message: format!("{e:#}"),
            }),
        }
    }
    Ok(result)
}

fn run_dataset(
    spec: &DatasetSpec,
    plan: &SplitPlan,
    methods: &[Method],
    k_max: usize,
) -> anyhow::Result<Vec<FoldOutcome>> {
    let data = load_dataset(spec)?;
    let mode = if data.class_count() == 2 {
        F1Mode::Binary {
            positive: spec.positive_index(&data)?,
        }
    } else {
        F1Mode::Macro
    };
    (0..plan.n_folds)
        .into_par_iter()
        .map(|fold| run_fold(&data, spec.scaling, plan, fold, methods, k_max, mode))
        .collect()
}

fn run_fold(
    data: &Dataset,
    scaling: Scaling,
    plan: &SplitPlan,
    fold: usize,
    methods: &[Method],
    k_max: usize,
    mode: F1Mode,
) -> anyhow::Result<FoldOutcome> {
    let split = split_fold(data, plan, fold)?;
    let (mut train, mut val, mut test) = split.materialize(data);
    if scaling == Scaling::MinMax {
        let (tr, rest) = min_max_scale(&train, &[&val, &test])?;
        train = tr;
        [val, test] = <[Dataset; 2]>::try_from(rest).expect("two partitions scaled");
    }
    score_partitions(
        &train,
        &val,
        &test,
        data.class_count(),
        methods,
        k_max,
        mode,
    )
}

/// Fits every method on `train` and scores it on `test`. Only k-NN reads
/// `validation`, to choose k.
pub fn score_partitions(
    train: &Dataset,
    validation: &Dataset,
    test: &Dataset,
    class_count: usize,
    methods: &[Method],
    k_max: usize,
    mode: F1Mode,
) -> anyhow::Result<FoldOutcome> {
    let mut outcome = FoldOutcome {
        scores: Vec::with_capacity(methods.len()),
        k: None,
    };
    for &method in methods {
        // only k-NN looks at the validation partition
        let predicted = match method {
            Method::Plknn => fit_plknn(train)?.predict_labels(test)?,
            Method::Smknn | Method::Lmknn => {
                let variant = method.mknn_variant().expect("mknn method");
                fit_mknn(train, variant)?.predict_labels(test)?
            }
            Method::Knn => {
                let k = tune_k(train, validation, k_max)?;
                outcome.k = Some(k);
                fit_knn(train, k)?.predict_labels(test)?
            }
        };
        let acc = accuracy(&predicted, test.labels())?;
        let f1 = f1_score(&predicted, test.labels(), class_count, mode)?;
        outcome.scores.push((method, acc, f1));
    }
    Ok(outcome)
}
