//! Distance kernels and the half-space test used by semicircle selection.
//!
//! The checked functions validate dimensions and return [`Error::DimensionMismatch`]
//! on disagreement. The classifiers call the unchecked variants in their
//! inner loops after validating the query once.

use crate::error::{check_dims, Error, Result};

/// Euclidean (L2) distance.
///
/// ```
/// assert_eq!(plknn::euclidean_distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
/// ```
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    check_dims(a.len(), b.len())?;
    Ok(euclidean_unchecked(a, b))
}

/// Manhattan (L1) distance.
///
/// ```
/// assert_eq!(plknn::manhattan_distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 7.0);
/// ```
pub fn manhattan_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    check_dims(a.len(), b.len())?;
    Ok(manhattan_unchecked(a, b))
}

/// Inner product `<cstar - s, t - s>`.
///
/// Nonnegative exactly when the angle at `s` between `t` and `cstar` lies in
/// the closed interval [-90°, +90°]. A zero vector on either side yields 0.
pub fn halfspace_side(s: &[f64], cstar: &[f64], t: &[f64]) -> Result<f64> {
    check_dims(s.len(), cstar.len())?;
    check_dims(s.len(), t.len())?;
    Ok(halfspace_unchecked(s, cstar, t))
}

#[inline]
pub(crate) fn euclidean_unchecked(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

#[inline]
pub(crate) fn manhattan_unchecked(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

#[inline]
pub(crate) fn halfspace_unchecked(s: &[f64], cstar: &[f64], t: &[f64]) -> f64 {
    s.iter()
        .zip(cstar)
        .zip(t)
        .map(|((s, c), t)| (c - s) * (t - s))
        .sum()
}

pub(crate) fn require_dim(expected: usize, v: &[f64]) -> Result<()> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            found: v.len(),
        })
    }
}
