use crate::dataset::Dataset;
use crate::distance::euclidean_unchecked;
use crate::error::{check_dims, Error, Result};

/// Additive floor inside every reciprocal distance, so that a sample sitting
/// exactly on its centroid (or on the query) gets a large finite weight.
pub const EPSILON: f64 = 1e-12;

/// Component-wise median. Even counts average the two middle values.
///
/// ```
/// let c = plknn::class_centroid_median(&[&[1.0, 10.0], &[2.0, 20.0], &[9.0, 30.0]]).unwrap();
/// assert_eq!(c, vec![2.0, 20.0]);
/// ```
pub fn class_centroid_median(samples: &[&[f64]]) -> Result<Vec<f64>> {
    let dim = common_dim(samples)?;
    let mut column = Vec::with_capacity(samples.len());
    Ok((0..dim)
        .map(|j| {
            column.clear();
            column.extend(samples.iter().map(|s| s[j]));
            median_in_place(&mut column)
        })
        .collect())
}

/// Component-wise arithmetic mean.
pub fn class_centroid_mean(samples: &[&[f64]]) -> Result<Vec<f64>> {
    let dim = common_dim(samples)?;
    let n = samples.len() as f64;
    Ok((0..dim)
        .map(|j| samples.iter().map(|s| s[j]).sum::<f64>() / n)
        .collect())
}

/// `1 / (euclidean(x, c) + EPSILON)`.
pub fn training_weight(x: &[f64], centroid: &[f64]) -> Result<f64> {
    check_dims(centroid.len(), x.len())?;
    Ok(1.0 / (euclidean_unchecked(x, centroid) + EPSILON))
}

pub(crate) fn median_in_place(values: &mut [f64]) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

fn common_dim(samples: &[&[f64]]) -> Result<usize> {
    let first = samples
        .first()
        .ok_or(Error::EmptyInput("centroid of an empty sample set"))?;
    for s in samples {
        check_dims(first.len(), s.len())?;
    }
    Ok(first.len())
}

/// Centroids for every class and each training sample's weight against its
/// own class centroid.
pub(crate) fn fit_centroids(
    train: &Dataset,
    centroid: fn(&[&[f64]]) -> Result<Vec<f64>>,
) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    train.check_complete()?;
    let mut members: Vec<Vec<&[f64]>> = vec![Vec::new(); train.class_count()];
    for (row, &y) in train.rows().zip(train.labels()) {
        members[y].push(row);
    }
    let centroids = members
        .iter()
        .map(|m| centroid(m))
        .collect::<Result<Vec<_>>>()?;
    let weights = train
        .rows()
        .zip(train.labels())
        .map(|(row, &y)| 1.0 / (euclidean_unchecked(row, &centroids[y]) + EPSILON))
        .collect();
    Ok((centroids, weights))
}
