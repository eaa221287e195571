use super::centroid::EPSILON;
use super::{argmax, argmin, Prediction};
use crate::dataset::Dataset;
use crate::distance::{manhattan_unchecked, require_dim};
use crate::error::Result;

/// Manhattan distance from `query` to every centroid.
pub(crate) fn centroid_distances(centroids: &[Vec<f64>], query: &[f64]) -> Vec<f64> {
    centroids
        .iter()
        .map(|c| manhattan_unchecked(query, c))
        .collect()
}

pub(crate) fn nearest(centroids: &[Vec<f64>], query: &[f64]) -> (usize, f64) {
    let d = centroid_distances(centroids, query);
    let i = argmin(&d);
    (i, d[i])
}

/// Indices of training samples within Manhattan distance `radius` of `query`,
/// in training order.
pub fn circle_members(train: &Dataset, query: &[f64], radius: f64) -> Result<Vec<usize>> {
    require_dim(train.dim(), query)?;
    Ok(train
        .rows()
        .enumerate()
        .filter(|(_, t)| manhattan_unchecked(query, t) <= radius)
        .map(|(i, _)| i)
        .collect())
}

/// Weighted vote of the selected neighbors, normalized to sum to one.
///
/// Each neighbor `t` contributes `W(t) / (D_M(t, s) + EPSILON)` to its own
/// class, where `W(t)` is its stored training weight. An empty neighbor set
/// yields all zeros.
pub(crate) fn weighted_scores(
    train: &Dataset,
    weights: &[f64],
    query: &[f64],
    neighbors: &[usize],
) -> Vec<f64> {
    let mut raw = vec![0.0; train.class_count()];
    for &j in neighbors {
        let d = manhattan_unchecked(train.row(j), query);
        raw[train.label(j)] += weights[j] / (d + EPSILON);
    }
    let total: f64 = raw.iter().sum();
    if total > 0.0 {
        for r in &mut raw {
            *r /= total;
        }
    }
    raw
}

pub(crate) fn decide(scores: Vec<f64>, neighbors_empty: bool, fallback_class: usize) -> Prediction {
    if neighbors_empty {
        Prediction {
            label: fallback_class,
            scores,
            fallback_used: true,
        }
    } else {
        Prediction {
            label: argmax(&scores),
            scores,
            fallback_used: false,
        }
    }
}
