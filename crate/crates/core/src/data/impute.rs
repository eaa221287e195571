use serde::{Deserialize, Serialize};

use crate::classifiers::median_of;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImputePolicy {
    /// Replace each missing cell with the median of its column's present
    /// values, computed over every row.
    #[default]
    Median,
    /// Remove any row with a missing cell.
    #[serde(alias = "drop")]
    DropRows,
}

/// Completes a matrix with `None` marking missing cells. Returns the filled
/// rows and the indices of the input rows they came from.
pub fn impute_missing(
    rows: Vec<Vec<Option<f64>>>,
    policy: ImputePolicy,
) -> Result<(Vec<Vec<f64>>, Vec<usize>)> {
    match policy {
        ImputePolicy::DropRows => {
            let mut kept = Vec::new();
            let mut out = Vec::new();
            for (i, row) in rows.into_iter().enumerate() {
                if let Some(full) = row.into_iter().collect::<Option<Vec<f64>>>() {
                    kept.push(i);
                    out.push(full);
                }
            }
            Ok((out, kept))
        }
        ImputePolicy::Median => {
            let width = rows.first().map_or(0, Vec::len);
            let mut fill = vec![0.0; width];
            for (j, slot) in fill.iter_mut().enumerate() {
                if rows.iter().all(|r| r[j].is_some()) {
                    continue;
                }
                let mut present: Vec<f64> = rows.iter().filter_map(|r| r[j]).collect();
                if present.is_empty() {
                    return Err(Error::ColumnAllMissing { column: j });
                }
                *slot = median_of(&mut present);
            }
            let kept = (0..rows.len()).collect();
            let out = rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .zip(&fill)
                        .map(|(v, f)| v.unwrap_or(*f))
                        .collect()
                })
                .collect();
            Ok((out, kept))
        }
    }
}
