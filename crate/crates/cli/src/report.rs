//! Human-readable and CSV renderings of an [`Analysis`].

use std::fmt::Write;

use crate::analysis::Analysis;
use crate::benchmark::DatasetFailure;
use crate::store::DIAGRAM_FILE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ReportFormat {
    Csv,
    #[default]
    Text,
}

/// Marker for the best mean F1 on a dataset.
pub const BEST_MARK: &str = "*";
/// Marker for methods not significantly different from the best.
pub const SIMILAR_MARK: &str = "~";

pub fn render(analysis: &Analysis, failures: &[DatasetFailure], format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_text(analysis, failures),
        ReportFormat::Csv => render_csv(analysis),
    }
}

fn mark(analysis: &Analysis, d: usize, m: usize) -> &'static str {
    if analysis.best[d] == m {
        BEST_MARK
    } else if analysis.similar_to_best(d, m) {
        SIMILAR_MARK
    } else {
        ""
    }
}

fn p_vs_best(analysis: &Analysis, d: usize, m: usize) -> String {
    analysis.vs_best[d][m]
        .as_ref()
        .map_or_else(String::new, |t| format!("{:.4}", t.p_value))
}

fn render_text(a: &Analysis, failures: &[DatasetFailure]) -> String {
    let mut out = String::new();
    let dw = a.datasets.iter().map(String::len).max().unwrap_or(0).max(7);
    let mw = a.methods.iter().map(String::len).max().unwrap_or(0).max(6);
    let _ = writeln!(
        out,
        "{:<dw$}  {:<mw$}  {:<15}  {:<15}  {:<1}  p vs best ({}, Wilcoxon)",
        "Dataset", "Method", "Accuracy", "F1", "", a.metric
    );
    for (d, name) in a.datasets.iter().enumerate() {
        for (m, method) in a.methods.iter().enumerate() {
            let c = &a.cells[d][m];
            let _ = writeln!(
                out,
                "{:<dw$}  {:<mw$}  {:.4} ± {:.4}  {:.4} ± {:.4}  {:<1}  {}",
                if m == 0 { name.as_str() } else { "" },
                method,
                c.accuracy_mean,
                c.accuracy_std,
                c.f1_mean,
                c.f1_std,
                mark(a, d, m),
                p_vs_best(a, d, m),
            );
        }
    }
    let _ = writeln!(
        out,
        "\n{BEST_MARK} best mean F1; {SIMILAR_MARK} not significantly different from the best (p >= {}).",
        a.alpha
    );

    if let Some(ranks) = &a.mean_ranks {
        let _ = writeln!(out, "\nFriedman mean ranks (F1, 1 = best):");
        for (m, r) in a.methods.iter().zip(ranks) {
            let _ = writeln!(out, "  {m:<mw$}  {r:.3}");
        }
        match a.critical_difference {
            Some(cd) => {
                let _ = writeln!(
                    out,
                    "Nemenyi CD (k = {}, N = {}, alpha = {}) = {cd:.3}; diagram: {DIAGRAM_FILE}",
                    a.methods.len(),
                    a.datasets.len(),
                    a.alpha
                );
            }
            None => {
                let _ = writeln!(
                    out,
                    "Nemenyi CD unavailable for k = {} at alpha = {}.",
                    a.methods.len(),
                    a.alpha
                );
            }
        }
    }

    if !a.vs_reference.is_empty() {
        let reference = &a.vs_reference[0].reference;
        let _ = writeln!(
            out,
            "\nWilcoxon signed-rank, {reference} vs each method ({}):",
            a.metric
        );
        for c in &a.vs_reference {
            let _ = writeln!(
                out,
                "  {:<dw$}  {:<mw$}  W = {:>6}  p = {:.4}  n = {:>2}  {}",
                c.dataset,
                c.method,
                c.result.statistic,
                c.result.p_value,
                c.result.n_effective,
                if c.result.reject_at_alpha {
                    "differs"
                } else {
                    "similar"
                }
            );
        }
    }

    if !failures.is_empty() {
        let _ = writeln!(out, "\nFailed datasets:");
        for f in failures {
            let _ = writeln!(out, "  {}: {}", f.dataset, f.message);
        }
    }
    out
}

fn render_csv(a: &Analysis) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = [
        "dataset",
        "method",
        "accuracy_mean",
        "accuracy_std",
        "f1_mean",
        "f1_std",
        "marker",
        "p_vs_best",
    ];
    w.write_record(header).expect("in-memory write");
    for (d, name) in a.datasets.iter().enumerate() {
        for (m, method) in a.methods.iter().enumerate() {
            let c = &a.cells[d][m];
            w.write_record([
                name.clone(),
                method.clone(),
                c.accuracy_mean.to_string(),
                c.accuracy_std.to_string(),
                c.f1_mean.to_string(),
                c.f1_std.to_string(),
                mark(a, d, m).to_string(),
                a.vs_best[d][m]
                    .as_ref()
                    .map_or_else(String::new, |t| t.p_value.to_string()),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
