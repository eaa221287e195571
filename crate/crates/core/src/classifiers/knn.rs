use serde::{Deserialize, Serialize};

use super::{argmax, Classifier, Prediction};
use crate::dataset::Dataset;
use crate::distance::{euclidean_unchecked, require_dim};
use crate::error::{Error, Result};

/// Upper end of the k search range.
pub const DEFAULT_K_MAX: usize = 50;

/// Majority-vote k-NN over Euclidean distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnModel {
    k: usize,
    train: Dataset,
}

pub fn fit_knn(train: &Dataset, k: usize) -> Result<KnnModel> {
    KnnModel::fit(train, k)
}

impl KnnModel {
    pub fn fit(train: &Dataset, k: usize) -> Result<Self> {
        if k == 0 || k > train.len() {
            return Err(Error::Config(format!(
                "k = {k} outside [1, {}]",
                train.len()
            )));
        }
        Ok(Self {
            k,
            train: train.clone(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn train(&self) -> &Dataset {
        &self.train
    }
}

/// Training indices ordered by distance to `query`; training order breaks
/// ties. Only the first `take` entries are guaranteed sorted.
fn neighbor_order(train: &Dataset, query: &[f64], take: usize) -> Vec<usize> {
    let dist: Vec<f64> = train
        .rows()
        .map(|t| euclidean_unchecked(query, t))
        .collect();
    let mut order: Vec<usize> = (0..train.len()).collect();
    let cmp = |a: &usize, b: &usize| dist[*a].total_cmp(&dist[*b]).then(a.cmp(b));
    if take < order.len() {
        order.select_nth_unstable_by(take, cmp);
        order.truncate(take);
    }
    order.sort_unstable_by(cmp);
    order
}

impl Classifier for KnnModel {
    fn predict(&self, query: &[f64]) -> Result<Prediction> {
        require_dim(self.train.dim(), query)?;
        let mut votes = vec![0.0; self.train.class_count()];
        for j in neighbor_order(&self.train, query, self.k) {
            votes[self.train.label(j)] += 1.0;
        }
        for v in &mut votes {
            *v /= self.k as f64;
        }
        Ok(Prediction {
            label: argmax(&votes),
            scores: votes,
            fallback_used: false,
        })
    }

    fn class_count(&self) -> usize {
        self.train.class_count()
    }

    fn dim(&self) -> usize {
        self.train.dim()
    }
}

/// Picks k in `[1, min(k_max, |train|)]` maximizing validation accuracy,
/// smallest k on ties.
///
/// Each validation sample's neighbor ranking is computed once and the vote
/// is grown one neighbor at a time, so every candidate k costs one extra
/// vote rather than a new search.
pub fn tune_k(train: &Dataset, validation: &Dataset, k_max: usize) -> Result<usize> {
    if validation.is_empty() {
        return Err(Error::Config("validation set is empty".into()));
    }
    if train.is_empty() {
        return Err(Error::Config("training set is empty".into()));
    }
    if k_max == 0 {
        return Err(Error::Config("k_max must be at least 1".into()));
    }
    require_dim(train.dim(), validation.row(0))?;
    let k_max = k_max.min(train.len());
    let mut correct = vec![0usize; k_max];
    let mut votes = vec![0usize; train.class_count()];
    for (query, &truth) in validation.rows().zip(validation.labels()) {
        votes.iter_mut().for_each(|v| *v = 0);
        for (k, j) in neighbor_order(train, query, k_max).into_iter().enumerate() {
            votes[train.label(j)] += 1;
            let mut best = 0;
            for (c, &v) in votes.iter().enumerate().skip(1) {
                if v > votes[best] {
                    best = c;
                }
            }
            if best == truth {
                correct[k] += 1;
            }
        }
    }
    let mut best_k = 0;
    for (k, &c) in correct.iter().enumerate() {
        if c > correct[best_k] {
            best_k = k;
        }
    }
    Ok(best_k + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(points: &[(f64, usize)]) -> Dataset {
        let n = points.iter().map(|p| p.1).max().unwrap() + 1;
        Dataset::new(
            "line",
            points.iter().map(|p| vec![p.0]).collect(),
            points.iter().map(|p| p.1).collect(),
            (0..n.max(2)).map(|i| format!("c{i}")).collect(),
        )
        .unwrap()
    }

    #[test]
    fn k1_and_k_equals_m() {
        let train = line(&[(0.0, 0), (1.0, 1), (2.0, 1), (3.0, 1), (10.0, 0)]);
        let m1 = fit_knn(&train, 1).unwrap();
        assert_eq!(m1.predict(&[9.0]).unwrap().label, 0);
        assert_eq!(m1.predict(&[1.2]).unwrap().label, 1);
        let all = fit_knn(&train, 5).unwrap();
        for q in [-5.0, 0.0, 9.9, 100.0] {
            let p = all.predict(&[q]).unwrap();
            assert_eq!(p.label, 1);
            assert_eq!(p.scores, vec![0.4, 0.6]);
        }
    }

    #[test]
    fn distance_ties_use_training_order_and_vote_ties_low_class() {
        // both neighbors at distance 1; k = 1 takes the earlier row
        let train = line(&[(1.0, 1), (-1.0, 0)]);
        assert_eq!(
            fit_knn(&train, 1).unwrap().predict(&[0.0]).unwrap().label,
            1
        );
        // k = 2 splits the vote; lower class index wins
        assert_eq!(
            fit_knn(&train, 2).unwrap().predict(&[0.0]).unwrap().label,
            0
        );
    }

    #[test]
    fn k_out_of_range() {
        let train = line(&[(0.0, 0), (1.0, 1)]);
        assert!(matches!(fit_knn(&train, 0), Err(Error::Config(_))));
        assert!(matches!(fit_knn(&train, 3), Err(Error::Config(_))));
        assert!(fit_knn(&train, 2).unwrap().predict(&[0.0, 1.0]).is_err());
    }

    #[test]
    fn tune_k_separable_and_ties() {
        let train = line(&[(0.0, 0), (0.1, 0), (0.2, 0), (5.0, 1), (5.1, 1), (5.2, 1)]);
        let val = line(&[(0.05, 0), (5.05, 1)]);
        assert_eq!(tune_k(&train, &val, 50).unwrap(), 1);
        // every k gives the same validation accuracy
        let train = line(&[(0.0, 0), (1.0, 1)]);
        let val = train.subset(&[0]);
        assert_eq!(tune_k(&train, &val, 2).unwrap(), 1);
    }

    #[test]
    fn tune_k_rejects_empty_validation() {
        let train = line(&[(0.0, 0), (1.0, 1)]);
        let empty = train.subset(&[]);
        assert!(matches!(tune_k(&train, &empty, 50), Err(Error::Config(_))));
    }
}
