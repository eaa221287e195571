//! `fit` and `predict`.

use std::fmt::Write;
use std::path::Path;

use anyhow::{bail, Context};
use plknn::data::{split_fold, MinMaxScaler, Scaling};
use plknn::{fit_knn, fit_mknn, fit_plknn, load_dataset, tune_k, DatasetSpec, SplitPlan};

use crate::config::Method;
use crate::model_file::{FittedModel, ModelFile};
use crate::report::ReportFormat;

/// Fits `method` on the whole dataset. k-NN first tunes k on one stratified
/// train/validation split drawn with `seed`.
pub fn fit_model(
    spec: &DatasetSpec,
    method: Method,
    seed: u64,
    k_max: usize,
) -> anyhow::Result<(ModelFile, String)> {
    let raw = load_dataset(spec)?;
    let scaler = (spec.scaling == Scaling::MinMax).then(|| MinMaxScaler::fit(&raw));
    let data = match &scaler {
        Some(s) => s.transform(&raw)?,
        None => raw.clone(),
    };
    let mut summary = format!(
        "Fitted {method} on {}: {} samples, {} features, {} classes\n",
        spec.name,
        data.len(),
        data.dim(),
        data.class_count()
    );
    let model = match method {
        Method::Plknn | Method::Smknn | Method::Lmknn => {
            let (model, centroids) = match method.mknn_variant() {
                None => {
                    let m = fit_plknn(&data)?;
                    let c = m.centroids().to_vec();
                    (FittedModel::Plknn(m), c)
                }
                Some(v) => {
                    let m = fit_mknn(&data, v)?;
                    let c = m.centroids().to_vec();
                    (FittedModel::Mknn(m), c)
                }
            };
            summary.push_str("Centroids:\n");
            for (name, c) in data.class_names().iter().zip(&centroids) {
                let coords: Vec<String> = c.iter().map(|v| format!("{v:.4}")).collect();
                let _ = writeln!(summary, "  {name}: [{}]", coords.join(", "));
            }
            model
        }
        Method::Knn => {
            let plan = SplitPlan {
                n_folds: 1,
                seed,
                ..SplitPlan::default()
            };
            let split = split_fold(&raw, &plan, 0)?;
            let (train, val, _) = split.materialize(&raw);
            let (train, val) = match spec.scaling {
                Scaling::MinMax => {
                    let s = MinMaxScaler::fit(&train);
                    (s.transform(&train)?, s.transform(&val)?)
                }
                Scaling::None => (train, val),
            };
            let k = tune_k(&train, &val, k_max)?;
            let _ = writeln!(
                summary,
                "k = {k} (tuned on a 70/15/15 split, seed {seed}, k_max {k_max})"
            );
            FittedModel::Knn(fit_knn(&data, k)?)
        }
    };
    Ok((
        ModelFile::new(&spec.name, data.class_names().to_vec(), scaler, model),
        summary,
    ))
}

/// Reads a delimited file of feature rows (no label column).
pub fn read_queries(path: &Path, has_header: bool, delimiter: u8) -> anyhow::Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .delimiter(delimiter)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        let line = i + 1 + usize::from(has_header);
        if rec.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        let row = rec
            .iter()
            .enumerate()
            .map(|(j, f)| {
                f.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .with_context(|| {
                        format!(
                            "{} line {line}, column {j}: `{f}` is not a number",
                            path.display()
                        )
                    })
            })
            .collect::<anyhow::Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// One output row per query, in input order.
pub fn predict_table(
    model: &ModelFile,
    queries: &[Vec<f64>],
    format: ReportFormat,
) -> anyhow::Result<String> {
    let mut rows = Vec::with_capacity(queries.len());
    for (i, q) in queries.iter().enumerate() {
        let p = model
            .predict(q)
            .with_context(|| format!("query row {}", i + 1))?;
        let mut fields = vec![(i + 1).to_string(), model.class_names[p.label].clone()];
        fields.extend(p.scores.iter().map(|s| s.to_string()));
        fields.push(p.fallback_used.to_string());
        rows.push(fields);
    }
    let mut header = vec!["row".to_string(), "label".to_string()];
    header.extend(model.class_names.iter().map(|c| format!("score_{c}")));
    header.push("fallback".into());

    Ok(match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header)?;
            for r in &rows {
                w.write_record(r)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        ReportFormat::Text => {
            let mut widths: Vec<usize> = header.iter().map(String::len).collect();
            for r in &rows {
                for (w, f) in widths.iter_mut().zip(r) {
                    *w = (*w).max(f.len());
                }
            }
            let mut out = String::new();
            for r in std::iter::once(&header).chain(&rows) {
                let line: Vec<String> = r
                    .iter()
                    .zip(&widths)
                    .map(|(f, w)| format!("{f:<w$}"))
                    .collect();
                let _ = writeln!(out, "{}", line.join("  ").trim_end());
            }
            out
        }
    })
}

pub fn delimiter_byte(c: char) -> anyhow::Result<u8> {
    match u8::try_from(c) {
        Ok(b) if c.is_ascii() => Ok(b),
        _ => bail!("delimiter {c:?} is not a single ASCII character"),
    }
}
