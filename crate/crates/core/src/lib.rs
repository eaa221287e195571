//! Parameterless nearest-neighbor classification.
//!
//! The central model is [`PlknnModel`]: a k-NN variant with no `k`. It keeps
//! one median centroid per class and weights each training sample by its
//! inverse distance to that centroid. To classify a query it finds the
//! nearest centroid, draws a circle around the query through that centroid,
//! keeps only the training samples in the half of the circle facing it, and
//! lets them vote with distance-scaled weights.
//!
//! Alongside it are the SMKNN/LMKNN baselines ([`MknnModel`]), a tuned
//! majority-vote k-NN ([`KnnModel`], [`tune_k`]), classification metrics,
//! the Wilcoxon signed-rank test, Friedman ranks with the Nemenyi critical
//! difference, CSV ingestion and the repeated stratified split protocol.
//!
//! ```
//! use plknn::{fit_plknn, Classifier, Dataset};
//!
//! let train = Dataset::new(
//!     "toy",
//!     vec![vec![0.0, 0.0], vec![0.0, 2.0], vec![10.0, 0.0], vec![10.0, 2.0]],
//!     vec![0, 0, 1, 1],
//!     vec!["left".into(), "right".into()],
//! )?;
//! let model = fit_plknn(&train)?;
//! assert_eq!(model.centroids(), &[vec![0.0, 1.0], vec![10.0, 1.0]]);
//! assert_eq!(model.predict(&[1.0, 1.5])?.label, 0);
//! # Ok::<(), plknn::Error>(())
//! ```

pub mod classifiers;
pub mod data;
mod dataset;
mod distance;
mod error;
pub mod eval;

pub use classifiers::{
    circle_members, class_centroid_mean, class_centroid_median, fit_knn, fit_mknn, fit_plknn,
    training_weight, tune_k, Classifier, KnnModel, MknnModel, MknnVariant, PlknnModel, Prediction,
    DEFAULT_K_MAX, EPSILON,
};
pub use data::{load_dataset, stratified_splits, DatasetSpec, Split, SplitPlan};
pub use dataset::Dataset;
pub use distance::{euclidean_distance, halfspace_side, manhattan_distance};
pub use error::{Error, Result};
pub use eval::{
    accuracy, f1_score, friedman_average_ranks, nemenyi_critical_difference, render_cd_diagram,
    wilcoxon_signed_rank, F1Mode, MetricReport, ScoreMatrix, TestResult,
};

// The guide in book/ is compiled here so its snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/plknn.md")]
    mod plknn {}
    #[doc = include_str!("../../../book/src/baselines.md")]
    mod baselines {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
    #[doc = include_str!("../../../book/src/data.md")]
    mod data {}
}
