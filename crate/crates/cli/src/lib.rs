//! Benchmark harness behind the `plknn` command: experiment configs, the
//! repeated-split benchmark, its statistics and output files, and model
//! files for `fit`/`predict`.

pub mod analysis;
pub mod benchmark;
pub mod commands;
pub mod config;
pub mod model_file;
pub mod report;
pub mod store;

pub use analysis::Analysis;
pub use benchmark::{run_benchmark, BenchmarkResult, FoldRecord};
pub use config::{ExperimentConfig, Method, TestMetric};
pub use model_file::{FittedModel, ModelFile};
