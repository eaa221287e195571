//! Statistics over per-fold records: summaries, Wilcoxon comparisons,
//! Friedman ranks and the Nemenyi critical difference.

use std::collections::HashMap;

use anyhow::{bail, Context};
use plknn::eval::NEMENYI_MAX_METHODS;
use plknn::{
    friedman_average_ranks, nemenyi_critical_difference, wilcoxon_signed_rank, MetricReport,
    ScoreMatrix, TestResult,
};

use crate::benchmark::FoldRecord;
use crate::config::TestMetric;

/// `(fold, accuracy, f1)` of one record.
type FoldScores = (usize, f64, f64);

/// Method every baseline is compared against in `wilcoxon.csv`.
pub const REFERENCE_METHOD: &str = "plknn";

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub dataset: String,
    pub method: String,
    pub reference: String,
    pub result: TestResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub datasets: Vec<String>,
    pub methods: Vec<String>,
    /// `[dataset][method]`.
    pub cells: Vec<Vec<MetricReport>>,
    pub alpha: f64,
    pub metric: TestMetric,
    /// Reference method against each other method, per dataset.
    pub vs_reference: Vec<Comparison>,
    /// Method with the highest mean F1 per dataset (lowest index on ties).
    pub best: Vec<usize>,
    /// Test of each method against the dataset's best; `None` for the best
    /// itself.
    pub vs_best: Vec<Vec<Option<TestResult>>>,
    /// Friedman mean ranks on mean F1; `None` with fewer than two methods.
    pub mean_ranks: Option<Vec<f64>>,
    /// `None` when ranks are missing or the q table does not cover the
    /// method count or alpha.
    pub critical_difference: Option<f64>,
}

impl Analysis {
    /// `datasets` and `methods` fix the output order. Every (dataset,
    /// method) pair must have the same set of folds.
    pub fn from_records(
        records: &[FoldRecord],
        datasets: &[String],
        methods: &[String],
        alpha: f64,
        metric: TestMetric,
    ) -> anyhow::Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            bail!("alpha = {alpha} outside (0, 1]");
        }
        let mut by_cell: HashMap<(&str, &str), Vec<FoldScores>> = HashMap::new();
        for r in records {
            by_cell
                .entry((&r.dataset, &r.method))
                .or_default()
                .push((r.fold, r.accuracy, r.f1));
        }
        let mut cells = Vec::with_capacity(datasets.len());
        for d in datasets {
            let mut row = Vec::with_capacity(methods.len());
            let mut folds_seen: Option<Vec<usize>> = None;
            for m in methods {
                let mut folds = by_cell
                    .remove(&(d.as_str(), m.as_str()))
                    .with_context(|| format!("no results for dataset `{d}`, method `{m}`"))?;
                folds.sort_by_key(|f| f.0);
                let ids: Vec<usize> = folds.iter().map(|f| f.0).collect();
                if ids.windows(2).any(|w| w[0] == w[1]) {
                    bail!("dataset `{d}`, method `{m}` repeats a fold");
                }
                match &folds_seen {
                    Some(prev) if *prev != ids => {
                        bail!("dataset `{d}`: methods were scored on different folds")
                    }
                    _ => folds_seen = Some(ids),
                }
                row.push(MetricReport::from_folds(
                    folds.into_iter().map(|(_, a, f)| (a, f)).collect(),
                ));
            }
            cells.push(row);
        }
        if let Some((d, m)) = by_cell.keys().next() {
            bail!("results contain unexpected dataset/method `{d}`/`{m}`");
        }

        let paired = |r: &MetricReport| match metric {
            TestMetric::F1 => r.f1s(),
            TestMetric::Accuracy => r.accuracies(),
        };
        let test = |a: &MetricReport, b: &MetricReport| {
            wilcoxon_signed_rank(&paired(a), &paired(b), alpha)
        };

        let mut vs_reference = Vec::new();
        if let Some(r) = methods.iter().position(|m| m == REFERENCE_METHOD) {
            for (d, row) in datasets.iter().zip(&cells) {
                for (m, cell) in methods.iter().zip(row) {
                    if *m != methods[r] {
                        vs_reference.push(Comparison {
                            dataset: d.clone(),
                            method: m.clone(),
                            reference: methods[r].clone(),
                            result: test(&row[r], cell)?,
                        });
                    }
                }
            }
        }

        let mut best = Vec::with_capacity(cells.len());
        let mut vs_best = Vec::with_capacity(cells.len());
        for row in &cells {
            let mut b = 0;
            for (i, c) in row.iter().enumerate() {
                if c.f1_mean > row[b].f1_mean {
                    b = i;
                }
            }
            let tests = row
                .iter()
                .enumerate()
                .map(|(i, c)| (i != b).then(|| test(&row[b], c)).transpose())
                .collect::<plknn::Result<Vec<_>>>()?;
            best.push(b);
            vs_best.push(tests);
        }

        let (mean_ranks, critical_difference) = if methods.len() >= 2 && !datasets.is_empty() {
            let matrix = ScoreMatrix::new(
                datasets.to_vec(),
                methods.to_vec(),
                cells
                    .iter()
                    .map(|row| row.iter().map(|c| c.f1_mean).collect())
                    .collect(),
            )?;
            let ranks = friedman_average_ranks(&matrix, true)?;
            let cd = (methods.len() <= NEMENYI_MAX_METHODS)
                .then(|| nemenyi_critical_difference(methods.len(), datasets.len(), alpha).ok())
                .flatten();
            (Some(ranks), cd)
        } else {
            (None, None)
        };

        Ok(Self {
            datasets: datasets.to_vec(),
            methods: methods.to_vec(),
            cells,
            alpha,
            metric,
            vs_reference,
            best,
            vs_best,
            mean_ranks,
            critical_difference,
        })
    }

    /// True when the method is not significantly different from the
    /// dataset's best (`p >= alpha`). The best method itself is not
    /// "similar".
    pub fn similar_to_best(&self, dataset: usize, method: usize) -> bool {
        self.vs_best[dataset][method]
            .as_ref()
            .is_some_and(|t| !t.reject_at_alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(d: &str, m: &str, fold: usize, acc: f64, f1: f64) -> FoldRecord {
        FoldRecord {
            dataset: d.into(),
            method: m.into(),
            fold,
            accuracy: acc,
            f1,
        }
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn best_and_similarity() {
        let mut records = Vec::new();
        for fold in 0..6 {
            let f = fold as f64 * 0.01;
            records.push(rec("a", "plknn", fold, 0.9, 0.9 + f));
            records.push(rec("a", "knn", fold, 0.8, 0.5 + f));
            // ties the best on every fold but one
            records.push(rec(
                "a",
                "smknn",
                fold,
                0.9,
                0.9 + f - if fold == 0 { 0.01 } else { 0.0 },
            ));
        }
        let a = Analysis::from_records(
            &records,
            &names(&["a"]),
            &names(&["plknn", "smknn", "knn"]),
            0.05,
            TestMetric::F1,
        )
        .unwrap();
        assert_eq!(a.best, vec![0]);
        assert!(a.vs_best[0][0].is_none());
        assert!(a.similar_to_best(0, 1));
        // six folds all in favour of the best: p = 0.03125
        assert!(!a.similar_to_best(0, 2));
        assert_eq!(a.vs_reference.len(), 2);
        assert_eq!(a.mean_ranks.as_ref().unwrap(), &vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn missing_cell_is_an_error() {
        let records = vec![rec("a", "plknn", 0, 1.0, 1.0)];
        assert!(Analysis::from_records(
            &records,
            &names(&["a"]),
            &names(&["plknn", "knn"]),
            0.05,
            TestMetric::F1
        )
        .is_err());
    }

    #[test]
    fn single_method_has_no_tests() {
        let records = vec![rec("a", "knn", 0, 1.0, 1.0), rec("a", "knn", 1, 0.5, 0.5)];
        let a = Analysis::from_records(
            &records,
            &names(&["a"]),
            &names(&["knn"]),
            0.05,
            TestMetric::F1,
        )
        .unwrap();
        assert!(a.vs_reference.is_empty());
        assert_eq!(a.vs_best, vec![vec![None]]);
        assert!(a.mean_ranks.is_none() && a.critical_difference.is_none());
    }
}
