//! Repeated stratified train/validation/test partitions.
//!
//! Each fold is an independent random partition (repeated subsampling, not a
//! cross-validation rotation). Fold `f` draws from a ChaCha8 stream seeded
//! with the plan's seed and stream number `f`, so any fold can be produced
//! on its own, in any order, on any thread.
//!
//! Per class of size `c`, partition `p` first receives `floor(fraction_p * c)`
//! samples. The one or two samples left over go to distinct partitions,
//! preferring whichever partition is furthest below its dataset-wide target
//! (the largest-remainder apportionment of the whole dataset), then train,
//! validation, test. Every class-partition count is therefore within one
//! sample of its exact proportional share, and the partition sizes match the
//! dataset-wide targets whenever that is reachable.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Guard against `0.7 * 10 = 6.999...` style rounding in floor allocation.
const FLOOR_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub n_folds: usize,
    /// Train, validation, test.
    pub fractions: [f64; 3],
    pub seed: u64,
}

impl Default for SplitPlan {
    fn default() -> Self {
        Self {
            n_folds: 20,
            fractions: [0.70, 0.15, 0.15],
            seed: 0,
        }
    }
}

impl SplitPlan {
    pub fn validate(&self) -> Result<()> {
        if self.n_folds == 0 {
            return Err(Error::Config("n_folds must be at least 1".into()));
        }
        if self.fractions.iter().any(|f| !(0.0..=1.0).contains(f)) {
            return Err(Error::Config(format!(
                "fractions {:?} outside [0, 1]",
                self.fractions
            )));
        }
        let total: f64 = self.fractions.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "fractions sum to {total}, expected 1"
            )));
        }
        Ok(())
    }
}

/// Row indices of one fold's partitions, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
    pub test: Vec<usize>,
}

impl Split {
    pub fn materialize(&self, data: &Dataset) -> (Dataset, Dataset, Dataset) {
        (
            data.subset(&self.train),
            data.subset(&self.validation),
            data.subset(&self.test),
        )
    }

    pub fn parts(&self) -> [&[usize]; 3] {
        [&self.train, &self.validation, &self.test]
    }
}

/// All folds of `plan`.
pub fn stratified_splits(data: &Dataset, plan: &SplitPlan) -> Result<Vec<Split>> {
    plan.validate()?;
    (0..plan.n_folds)
        .map(|f| split_fold(data, plan, f))
        .collect()
}

/// Fold `fold` alone; identical to the corresponding entry of
/// [`stratified_splits`].
pub fn split_fold(data: &Dataset, plan: &SplitPlan, fold: usize) -> Result<Split> {
    plan.validate()?;
    let counts = data.class_counts();
    for (index, &count) in counts.iter().enumerate() {
        if count < 3 {
            return Err(Error::ClassTooSmall {
                index,
                name: data.class_names()[index].clone(),
                count,
            });
        }
    }
    let allocation = allocate(&counts, &plan.fractions);

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); counts.len()];
    for (i, &y) in data.labels().iter().enumerate() {
        members[y].push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    rng.set_stream(fold as u64);

    let mut parts: [Vec<usize>; 3] = Default::default();
    for (class, idx) in members.iter_mut().enumerate() {
        idx.shuffle(&mut rng);
        let [a, b, _] = allocation[class];
        parts[0].extend_from_slice(&idx[..a]);
        parts[1].extend_from_slice(&idx[a..a + b]);
        parts[2].extend_from_slice(&idx[a + b..]);
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    let [train, validation, test] = parts;
    Ok(Split {
        train,
        validation,
        test,
    })
}

/// Per-class `[train, validation, test]` counts.
pub fn allocate(class_counts: &[usize], fractions: &[f64; 3]) -> Vec<[usize; 3]> {
    let total: usize = class_counts.iter().sum();
    let targets = largest_remainder(total, fractions);

    let mut alloc: Vec<[usize; 3]> = class_counts
        .iter()
        .map(|&c| {
            let mut base = [0; 3];
            for p in 0..3 {
                base[p] = (fractions[p] * c as f64 + FLOOR_GUARD).floor() as usize;
            }
            base
        })
        .collect();
    let mut deficit = [0i64; 3];
    for p in 0..3 {
        let placed: usize = alloc.iter().map(|a| a[p]).sum();
        deficit[p] = targets[p] as i64 - placed as i64;
    }
    for (class, &c) in class_counts.iter().enumerate() {
        let mut given = [false; 3];
        let leftover = c - alloc[class].iter().sum::<usize>();
        for _ in 0..leftover {
            let frac = |p: usize| {
                let exact = fractions[p] * c as f64;
                exact - exact.floor()
            };
            let p = (0..3)
                .filter(|&p| !given[p])
                .max_by(|&a, &b| {
                    deficit[a]
                        .cmp(&deficit[b])
                        .then(frac(a).total_cmp(&frac(b)))
                        .then(b.cmp(&a))
                })
                .expect("at most two leftovers for three partitions");
            given[p] = true;
            alloc[class][p] += 1;
            deficit[p] -= 1;
        }
    }
    alloc
}

fn largest_remainder(total: usize, fractions: &[f64; 3]) -> [usize; 3] {
    let exact: Vec<f64> = fractions.iter().map(|f| f * total as f64).collect();
    let mut out = [0usize; 3];
    for p in 0..3 {
        out[p] = (exact[p] + FLOOR_GUARD).floor() as usize;
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| {
        let ra = exact[a] - out[a] as f64;
        let rb = exact[b] - out[b] as f64;
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    let mut left = total - out.iter().sum::<usize>();
    for &p in order.iter().cycle() {
        if left == 0 {
            break;
        }
        out[p] += 1;
        left -= 1;
    }
    out
}
