use std::collections::HashMap;
use std::fs::File;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::impute::{impute_missing, ImputePolicy};
use super::scale::Scaling;
use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Column selector: zero-based index or header name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColumnRef {
    Index(usize),
    Name(String),
}

impl ColumnRef {
    fn resolve(&self, header: Option<&[String]>, width: usize, path: &Path) -> Result<usize> {
        let found = match self {
            ColumnRef::Index(i) => (*i < width).then_some(*i),
            ColumnRef::Name(name) => header.and_then(|h| h.iter().position(|c| c == name)),
        };
        found.ok_or_else(|| Error::Ingest {
            path: path.to_path_buf(),
            row: 0,
            column: self.to_string(),
            message: format!("no such column (file has {width} columns)"),
        })
    }
}

impl std::fmt::Display for ColumnRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ColumnRef::Index(i) => write!(f, "#{i}"),
            ColumnRef::Name(n) => f.write_str(n),
        }
    }
}

/// What to do with a non-numeric feature column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CategoricalPolicy {
    Error,
    /// Codes 0, 1, 2, ... in order of first appearance.
    #[default]
    IntegerEncode,
}

fn default_missing() -> Vec<String> {
    vec!["?".into(), String::new()]
}

fn default_delimiter() -> char {
    ','
}

/// How to read one delimited dataset file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSpec {
    pub name: String,
    pub path: PathBuf,
    pub label_column: ColumnRef,
    /// Label value scored as positive for binary F1. Defaults to the
    /// minority class.
    #[serde(default)]
    pub positive_class: Option<String>,
    #[serde(default)]
    pub has_header: bool,
    #[serde(default = "default_delimiter")]
    pub delimiter: char,
    #[serde(default = "default_missing")]
    pub missing_tokens: Vec<String>,
    #[serde(default)]
    pub categorical: CategoricalPolicy,
    #[serde(default)]
    pub impute: ImputePolicy,
    #[serde(default)]
    pub scaling: Scaling,
    /// Columns dropped before parsing, such as row identifiers.
    #[serde(default)]
    pub ignore_columns: Vec<ColumnRef>,
}

impl DatasetSpec {
    pub fn new(name: impl Into<String>, path: impl Into<PathBuf>, label_column: ColumnRef) -> Self {
        Self {
            name: name.into(),
            path: path.into(),
            label_column,
            positive_class: None,
            has_header: false,
            delimiter: default_delimiter(),
            missing_tokens: default_missing(),
            categorical: CategoricalPolicy::default(),
            impute: ImputePolicy::default(),
            scaling: Scaling::default(),
            ignore_columns: Vec::new(),
        }
    }

    /// Class index of the configured positive label, or the minority class.
    pub fn positive_index(&self, data: &Dataset) -> Result<usize> {
        match &self.positive_class {
            Some(label) => data
                .class_names()
                .iter()
                .position(|c| c == label)
                .ok_or_else(|| {
                    Error::Config(format!(
                        "positive class `{label}` not among labels {:?} of `{}`",
                        data.class_names(),
                        self.name
                    ))
                }),
            None => Ok(data.minority_class()),
        }
    }
}

/// Reads a delimited file into a [`Dataset`].
///
/// Labels become class indices in order of first appearance (after any row
/// dropping). Missing markers are filled by the spec's impute policy.
/// Scaling is not applied here: it has to be fitted on a training split.
pub fn load_dataset(spec: &DatasetSpec) -> Result<Dataset> {
    let path = spec.path.as_path();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let delimiter = u8::try_from(spec.delimiter).map_err(|_| {
        Error::Config(format!(
            "delimiter {:?} is not a single byte",
            spec.delimiter
        ))
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .delimiter(delimiter)
        .from_reader(file);

    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        let fields: Vec<String> = rec.iter().map(|f| f.trim().to_string()).collect();
        if fields.iter().all(String::is_empty) {
            continue;
        }
        records.push(fields);
    }
    let header = if spec.has_header {
        if records.is_empty() {
            return Err(Error::EmptyInput("file has no header row"));
        }
        Some(records.remove(0))
    } else {
        None
    };
    if records.is_empty() {
        return Err(Error::EmptyInput("file has no data rows"));
    }
    let width = header.as_ref().map_or(records[0].len(), Vec::len);
    for (i, r) in records.iter().enumerate() {
        if r.len() != width {
            return Err(Error::Ingest {
                path: path.to_path_buf(),
                row: i + 1 + usize::from(spec.has_header),
                column: String::new(),
                message: format!("expected {width} fields, found {}", r.len()),
            });
        }
    }

    let label_col = spec.label_column.resolve(header.as_deref(), width, path)?;
    let mut skip = vec![false; width];
    skip[label_col] = true;
    for c in &spec.ignore_columns {
        skip[c.resolve(header.as_deref(), width, path)?] = true;
    }
    let feature_cols: Vec<usize> = (0..width).filter(|c| !skip[*c]).collect();
    if feature_cols.is_empty() {
        return Err(Error::Config(format!(
            "`{}` has no feature columns",
            spec.name
        )));
    }
    let column_name = |c: usize| match &header {
        Some(h) => h[c].clone(),
        None => format!("#{c}"),
    };

    let is_missing = |s: &str| spec.missing_tokens.iter().any(|t| t == s);
    let row_number = |i: usize| i + 1 + usize::from(spec.has_header);
    for (i, r) in records.iter().enumerate() {
        if is_missing(&r[label_col]) {
            return Err(Error::Ingest {
                path: path.to_path_buf(),
                row: row_number(i),
                column: column_name(label_col),
                message: "missing label".into(),
            });
        }
    }

    // Column-wise parse: numeric when every present value parses, otherwise
    // categorical.
    let mut columns: Vec<Vec<Option<f64>>> = Vec::with_capacity(feature_cols.len());
    for &c in &feature_cols {
        let parsed: Vec<Option<std::result::Result<f64, ()>>> = records
            .iter()
            .map(|r| {
                let v = r[c].as_str();
                (!is_missing(v)).then(|| v.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or(()))
            })
            .collect();
        let bad = parsed.iter().position(|v| matches!(v, Some(Err(()))));
        let column = match (bad, spec.categorical) {
            (None, _) => parsed.into_iter().map(|v| v.map(|x| x.unwrap())).collect(),
            (Some(i), CategoricalPolicy::Error) => {
                return Err(Error::Ingest {
                    path: path.to_path_buf(),
                    row: row_number(i),
                    column: column_name(c),
                    message: format!("non-numeric value `{}`", records[i][c]),
                })
            }
            (Some(_), CategoricalPolicy::IntegerEncode) => {
                let mut codes: HashMap<&str, f64> = HashMap::new();
                records
                    .iter()
                    .map(|r| {
                        let v = r[c].as_str();
                        if is_missing(v) {
                            None
                        } else {
                            let next = codes.len() as f64;
                            Some(*codes.entry(v).or_insert(next))
                        }
                    })
                    .collect()
            }
        };
        columns.push(column);
    }

    let rows: Vec<Vec<Option<f64>>> = (0..records.len())
        .map(|i| columns.iter().map(|col| col[i]).collect())
        .collect();
    let (rows, kept) = impute_missing(rows, spec.impute).map_err(|e| match e {
        Error::ColumnAllMissing { column } => Error::Ingest {
            path: path.to_path_buf(),
            row: 0,
            column: column_name(feature_cols[column]),
            message: "every value is missing".into(),
        },
        other => other,
    })?;

    let mut class_names: Vec<String> = Vec::new();
    let mut labels = Vec::with_capacity(kept.len());
    for &i in &kept {
        let raw = &records[i][label_col];
        let idx = match class_names.iter().position(|c| c == raw) {
            Some(idx) => idx,
            None => {
                class_names.push(raw.clone());
                class_names.len() - 1
            }
        };
        labels.push(idx);
    }
    let dim = feature_cols.len();
    let features: Vec<f64> = rows.into_iter().flatten().collect();
    let feature_names = feature_cols.iter().map(|&c| column_name(c)).collect();
    let ds = Dataset::from_parts(
        spec.name.clone(),
        dim,
        features,
        labels,
        class_names,
        feature_names,
    )?;
    ds.check_complete()?;
    Ok(ds)
}
