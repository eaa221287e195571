//! Dataset ingestion, missing-value handling, scaling, and the repeated
//! stratified split protocol.

mod impute;
mod load;
mod scale;
mod split;

pub use impute::{impute_missing, ImputePolicy};
pub use load::{load_dataset, CategoricalPolicy, ColumnRef, DatasetSpec};
pub use scale::{min_max_scale, MinMaxScaler, Scaling};
pub use split::{allocate, split_fold, stratified_splits, Split, SplitPlan};
