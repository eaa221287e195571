use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Datasets x methods table of one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreMatrix {
    datasets: Vec<String>,
    methods: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl ScoreMatrix {
    pub fn new(datasets: Vec<String>, methods: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        if values.len() != datasets.len() {
            return Err(Error::Config(format!(
                "{} rows for {} datasets",
                values.len(),
                datasets.len()
            )));
        }
        for (name, row) in datasets.iter().zip(&values) {
            if row.len() != methods.len() {
                return Err(Error::Config(format!(
                    "row `{name}` has {} entries for {} methods",
                    row.len(),
                    methods.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Config(format!("row `{name}` has a missing entry")));
            }
        }
        Ok(Self {
            datasets,
            methods,
            values,
        })
    }

    pub fn datasets(&self) -> &[String] {
        &self.datasets
    }

    pub fn methods(&self) -> &[String] {
        &self.methods
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }
}

/// Ranks within one row, 1 = best, mid-ranks on exact ties.
pub fn rank_row(row: &[f64], higher_is_better: bool) -> Vec<f64> {
    let mut order: Vec<usize> = (0..row.len()).collect();
    order.sort_by(|&a, &b| {
        let c = row[a].total_cmp(&row[b]);
        if higher_is_better {
            c.reverse()
        } else {
            c
        }
    });
    let mut ranks = vec![0.0; row.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && row[order[end]] == row[order[start]] {
            end += 1;
        }
        let mid = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = mid;
        }
        start = end;
    }
    ranks
}

/// Mean rank of each method across datasets (lower is better).
pub fn friedman_average_ranks(scores: &ScoreMatrix, higher_is_better: bool) -> Result<Vec<f64>> {
    let k = scores.methods.len();
    if k < 2 {
        return Err(Error::Config(format!(
            "ranking needs at least 2 methods, got {k}"
        )));
    }
    if scores.values.is_empty() {
        return Err(Error::Config("ranking needs at least 1 dataset".into()));
    }
    let mut sums = vec![0.0; k];
    for row in &scores.values {
        for (s, r) in sums.iter_mut().zip(rank_row(row, higher_is_better)) {
            *s += r;
        }
    }
    let n = scores.values.len() as f64;
    Ok(sums.into_iter().map(|s| s / n).collect())
}

/// Two-tailed Nemenyi critical values `q_alpha` for k = 2..=10: the
/// studentized range at infinite degrees of freedom divided by sqrt(2), as
/// tabulated in Demšar, "Statistical Comparisons of Classifiers over
/// Multiple Data Sets", JMLR 7 (2006), Table 5.
const Q_ALPHA_005: [f64; 9] = [
    1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164,
];
const Q_ALPHA_010: [f64; 9] = [
    1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780, 2.855, 2.920,
];

pub const NEMENYI_MAX_METHODS: usize = 10;

pub fn nemenyi_q(k_methods: usize, alpha: f64) -> Result<f64> {
    if !(2..=NEMENYI_MAX_METHODS).contains(&k_methods) {
        return Err(Error::Config(format!(
            "Nemenyi table covers 2..={NEMENYI_MAX_METHODS} methods, got {k_methods}"
        )));
    }
    let table = if alpha == 0.05 {
        &Q_ALPHA_005
    } else if alpha == 0.10 {
        &Q_ALPHA_010
    } else {
        return Err(Error::Config(format!(
            "Nemenyi table covers alpha 0.05 and 0.10, got {alpha}"
        )));
    };
    Ok(table[k_methods - 2])
}

/// `q_alpha * sqrt(k (k + 1) / (6 N))`.
///
/// ```
/// let cd = plknn::nemenyi_critical_difference(4, 11, 0.05).unwrap();
/// assert!((cd - 1.414).abs() < 1e-3);
/// ```
pub fn nemenyi_critical_difference(k_methods: usize, n_datasets: usize, alpha: f64) -> Result<f64> {
    if n_datasets == 0 {
        return Err(Error::Config(
            "critical difference needs at least 1 dataset".into(),
        ));
    }
    let q = nemenyi_q(k_methods, alpha)?;
    let k = k_methods as f64;
    Ok(q * (k * (k + 1.0) / (6.0 * n_datasets as f64)).sqrt())
}
