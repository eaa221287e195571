//! Wilcoxon signed-rank test for paired samples.
//!
//! Zero differences are dropped before ranking. Absolute differences are
//! ranked with mid-ranks for ties, and the statistic is `W = min(W+, W-)`.
//! Up to [`EXACT_MAX_N`] nonzero pairs the two-sided p-value is exact: the
//! null distribution of `W+` over all `2^n` sign assignments is counted with
//! a subset-sum table over doubled ranks (doubling keeps mid-ranks integral).
//! Larger samples use the normal approximation with tie and continuity
//! corrections.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of nonzero differences handled by the exact path.
pub const EXACT_MAX_N: usize = 25;

/// Relative gap under which two absolute differences count as tied. Fold
/// metrics are ratios of small integers, and mathematically equal
/// differences can disagree in the last bit after subtraction.
const TIE_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PValueMethod {
    Exact,
    Normal,
    /// Every difference was zero.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub reject_at_alpha: bool,
    pub n_effective: usize,
    pub method: PValueMethod,
}

/// Two-sided Wilcoxon signed-rank test of `x` against `y`.
///
/// ```
/// let x = [0.9, 0.8, 0.7, 0.95, 0.85];
/// let y = [0.8, 0.6, 0.4, 0.55, 0.35];
/// let r = plknn::wilcoxon_signed_rank(&x, &y, 0.05).unwrap();
/// assert_eq!(r.statistic, 0.0);
/// assert_eq!(r.p_value, 0.0625);
/// assert!(!r.reject_at_alpha);
/// ```
pub fn wilcoxon_signed_rank(x: &[f64], y: &[f64], alpha: f64) -> Result<TestResult> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::EmptyInput("Wilcoxon test needs at least one pair"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Config(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let diffs: Vec<f64> = x
        .iter()
        .zip(y)
        .map(|(a, b)| a - b)
        .filter(|d| *d != 0.0)
        .collect();
    let n = diffs.len();
    if n == 0 {
        return Ok(TestResult {
            statistic: 0.0,
            p_value: 1.0,
            reject_at_alpha: false,
            n_effective: 0,
            method: PValueMethod::Degenerate,
        });
    }
    let ranks = abs_ranks(&diffs);
    let w_plus: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        // fold from +0.0: an empty float `sum()` yields -0.0
        .fold(0.0, |acc, (_, r)| acc + r);
    let total = (n * (n + 1)) as f64 / 2.0;
    let w = w_plus.min(total - w_plus);
    let (p_value, method) = if n <= EXACT_MAX_N {
        (exact_p_value(&ranks, w), PValueMethod::Exact)
    } else {
        (normal_p_value(&ranks, w), PValueMethod::Normal)
    };
    Ok(TestResult {
        statistic: w,
        p_value,
        reject_at_alpha: p_value < alpha,
        n_effective: n,
        method,
    })
}

/// Mid-ranks of `|d|`, in input order.
pub fn abs_ranks(diffs: &[f64]) -> Vec<f64> {
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let mut order: Vec<usize> = (0..abs.len()).collect();
    order.sort_by(|&a, &b| abs[a].total_cmp(&abs[b]).then(a.cmp(&b)));
    let mut ranks = vec![0.0; abs.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && tied(abs[order[end - 1]], abs[order[end]]) {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let mid = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = mid;
        }
        start = end;
    }
    ranks
}

fn tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_RTOL * a.abs().max(b.abs())
}

/// Exact two-sided p-value `min(1, 2 P(W+ <= w))` under the sign-flip null.
pub fn exact_p_value(ranks: &[f64], w: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    // counts[s] = number of sign assignments whose doubled W+ equals s
    let mut counts = vec![0u64; total + 1];
    counts[0] = 1;
    let mut reach = 0;
    for &r in &doubled {
        for s in (0..=reach).rev() {
            if counts[s] != 0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    let limit = (2.0 * w).round() as usize;
    let tail: u64 = counts[..=limit.min(total)].iter().sum();
    let p = 2.0 * tail as f64 / 2f64.powi(ranks.len() as i32);
    p.min(1.0)
}

/// Normal approximation with tie correction and a 0.5 continuity correction.
pub fn normal_p_value(ranks: &[f64], w: f64) -> f64 {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut sorted = ranks.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((w - mean).abs() - 0.5).max(0.0) / var.sqrt();
    libm::erfc(z / std::f64::consts::SQRT_2).min(1.0)
}
