//! Classification metrics and the statistical comparison of classifiers:
//! paired Wilcoxon signed-rank tests, Friedman mean ranks, and the Nemenyi
//! critical difference with its diagram.

mod cd_diagram;
mod metrics;
mod ranks;
pub mod wilcoxon;

pub use cd_diagram::{cd_groups, render_cd_diagram};
pub use metrics::{accuracy, f1_score, mean_std, F1Mode, MetricReport};
pub use ranks::{
    friedman_average_ranks, nemenyi_critical_difference, nemenyi_q, rank_row, ScoreMatrix,
    NEMENYI_MAX_METHODS,
};
pub use wilcoxon::{wilcoxon_signed_rank, PValueMethod, TestResult};
