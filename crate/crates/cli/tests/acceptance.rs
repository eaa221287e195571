//! Acceptance suite: one PASS/FAIL line per criterion, then a single
//! assertion over all of them.
//!
//! Criteria that need datasets which are not bundled (see data/README.md)
//! fail with a "missing file" line until the files are placed in `data/`.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use plknn::data::{allocate, stratified_splits, Scaling};
use plknn::eval::MetricReport;
use plknn::{
    circle_members, fit_plknn, nemenyi_critical_difference, wilcoxon_signed_rank, Classifier,
    Dataset, DatasetSpec, SplitPlan,
};
use plknn_cli::store::{
    write_outputs, DIAGRAM_FILE, PROVENANCE_FILE, RESULTS_FILE, SUMMARY_FILE, WILCOXON_FILE,
};
use plknn_cli::{run_benchmark, BenchmarkResult, ExperimentConfig, Method};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEMICIRCLE_INSTANCES: usize = 10_000;
const SEMICIRCLE_TIME_LIMIT: Duration = Duration::from_secs(30);
const SCORE_INSTANCES: usize = 200;
const SCORE_SUM_TOL: f64 = 1e-9;
const WILCOXON_FIXTURES: usize = 10_000;
const WILCOXON_MAX_N: usize = 10;
const CD_EXPECTED: f64 = 1.414;
const CD_TOL: f64 = 0.001;
const WINE_MIN_ACCURACY: f64 = 0.90;
const WINE_MIN_F1: f64 = 0.90;
const WINE_TIME_LIMIT: Duration = Duration::from_secs(10);
const HCV_MAJORITY_TOL: f64 = 0.03;
const HCV_MAX_STD: f64 = 0.01;
const HCV_MAX_F1: f64 = 0.30;
const IL_MIN_F1_GAP: f64 = 0.10;
const BCO_MIN_ACCURACY: f64 = 0.93;
const FULL_TIME_LIMIT: Duration = Duration::from_secs(600);
const SEED: u64 = 0;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn benchmark_config() -> ExperimentConfig {
    ExperimentConfig::load(&data_dir().join("benchmark.toml")).expect("data/benchmark.toml parses")
}

fn spec(name: &str) -> DatasetSpec {
    benchmark_config()
        .datasets
        .into_iter()
        .find(|d| d.name == name)
        .unwrap_or_else(|| panic!("{name} missing from data/benchmark.toml"))
}

fn random_dataset(rng: &mut ChaCha8Rng, m: usize, d: usize, classes: usize) -> Dataset {
    let rows = (0..m)
        .map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let labels = (0..m)
        .map(|i| {
            if i < classes {
                i
            } else {
                rng.gen_range(0..classes)
            }
        })
        .collect();
    Dataset::new(
        "random",
        rows,
        labels,
        (0..classes).map(|c| c.to_string()).collect(),
    )
    .unwrap()
}

fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

fn l2(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn dot_from(s: &[f64], c: &[f64], t: &[f64]) -> f64 {
    (0..s.len()).map(|k| (c[k] - s[k]) * (t[k] - s[k])).sum()
}

/// Runs one dataset of the benchmark config with the protocol defaults.
fn bench_one(spec: DatasetSpec, seed: u64) -> anyhow::Result<(BenchmarkResult, Duration)> {
    let mut config = ExperimentConfig::new(vec![spec]);
    config.seed = seed;
    let start = Instant::now();
    let result = run_benchmark(&config)?;
    let elapsed = start.elapsed();
    if let Some(f) = result.failures.first() {
        anyhow::bail!("{}: {}", f.dataset, f.message);
    }
    Ok((result, elapsed))
}

fn report_of(result: &BenchmarkResult, method: Method) -> MetricReport {
    MetricReport::from_folds(
        result
            .records
            .iter()
            .filter(|r| r.method == method.name())
            .map(|r| (r.accuracy, r.f1))
            .collect(),
    )
}

fn c1_semicircle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut mismatches = 0;
    for i in 0..SEMICIRCLE_INSTANCES {
        let d = [2, 5, 20][i % 3];
        let train = random_dataset(&mut rng, 50, d, 3);
        let model = fit_plknn(&train).unwrap();
        let s: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.5..1.5)).collect();
        let (cstar, r) = model.nearest_centroid(&s).unwrap();
        let c = &model.centroids()[cstar];
        let oracle: Vec<usize> = (0..train.len())
            .filter(|&j| l1(&s, train.row(j)) <= r && dot_from(&s, c, train.row(j)) >= 0.0)
            .collect();
        if model.select_semicircle(&s, cstar, r).unwrap() != oracle {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && elapsed < SEMICIRCLE_TIME_LIMIT,
        format!(
            "{mismatches} mismatches over {SEMICIRCLE_INSTANCES} instances, {:.2} s (limit {} s)",
            elapsed.as_secs_f64(),
            SEMICIRCLE_TIME_LIMIT.as_secs()
        ),
    )
}

fn c2_scores() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut mismatches, mut worst_sum) = (0, 0.0f64);
    for _ in 0..SCORE_INSTANCES {
        let d = rng.gen_range(1..6);
        let m = rng.gen_range(5..25);
        let train = random_dataset(&mut rng, m, d, 3);
        let model = fit_plknn(&train).unwrap();
        let s: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.5..1.5)).collect();
        let (cstar, r) = model.nearest_centroid(&s).unwrap();
        let c = &model.centroids()[cstar];
        let mut raw = [0.0; 3];
        for j in 0..train.len() {
            let t = train.row(j);
            if l1(&s, t) <= r && dot_from(&s, c, t) >= 0.0 {
                let y = train.label(j);
                let w = 1.0 / (l2(t, &model.centroids()[y]) + 1e-12);
                raw[y] += w / (l1(t, &s) + 1e-12);
            }
        }
        let total: f64 = raw.iter().sum();
        let p = model.predict(&s).unwrap();
        if total == 0.0 {
            if !p.fallback_used || p.label != cstar {
                mismatches += 1;
            }
            continue;
        }
        let mut best = 0;
        for i in 1..3 {
            if raw[i] > raw[best] {
                best = i;
            }
        }
        if p.label != best || p.fallback_used {
            mismatches += 1;
        }
        worst_sum = worst_sum.max((p.scores.iter().sum::<f64>() - 1.0).abs());
    }
    outcome(
        mismatches == 0 && worst_sum <= SCORE_SUM_TOL,
        format!("{mismatches} label mismatches over {SCORE_INSTANCES} instances; max |sum p - 1| = {worst_sum:.1e}"),
    )
}

fn c3_wilcoxon() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut mismatches = 0;
    for _ in 0..WILCOXON_FIXTURES {
        let n = rng.gen_range(1..=WILCOXON_MAX_N);
        let d: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
        let nz: Vec<i64> = d.iter().copied().filter(|&v| v != 0).collect();
        let expected = if nz.is_empty() {
            1.0
        } else {
            let ranks: Vec<f64> = nz
                .iter()
                .map(|a| {
                    let below = nz.iter().filter(|b| b.abs() < a.abs()).count() as f64;
                    let equal = nz.iter().filter(|b| b.abs() == a.abs()).count() as f64;
                    below + (equal + 1.0) / 2.0
                })
                .collect();
            let total: f64 = ranks.iter().sum();
            let wp: f64 = nz
                .iter()
                .zip(&ranks)
                .filter(|(v, _)| **v > 0)
                .map(|(_, r)| r)
                .sum();
            let w = wp.min(total - wp);
            let hits = (0u32..1 << nz.len())
                .filter(|mask| {
                    let p: f64 = (0..nz.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| ranks[i])
                        .sum();
                    p.min(total - p) <= w + 1e-9
                })
                .count();
            hits as f64 / f64::from(1u32 << nz.len())
        };
        let x: Vec<f64> = d.iter().map(|&v| v as f64).collect();
        let r = wilcoxon_signed_rank(&x, &vec![0.0; n], 0.05).unwrap();
        if (r.p_value - expected).abs() > 1e-12 {
            mismatches += 1;
        }
    }
    let p5 = wilcoxon_signed_rank(&[1.0, 2.0, 3.0, 4.0, 5.0], &[0.0; 5], 0.05)
        .unwrap()
        .p_value;
    let p6 = wilcoxon_signed_rank(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], &[0.0; 6], 0.05)
        .unwrap()
        .p_value;
    outcome(
        mismatches == 0 && p5 == 0.0625 && p6 == 0.03125,
        format!("{mismatches} mismatches over {WILCOXON_FIXTURES} fixtures (n <= {WILCOXON_MAX_N}); n=5 p = {p5}, n=6 p = {p6}"),
    )
}

fn c4_nemenyi() -> Outcome {
    let cd = nemenyi_critical_difference(4, 11, 0.05).unwrap();
    outcome(
        (cd - CD_EXPECTED).abs() <= CD_TOL,
        format!("CD(4, 11, 0.05) = {cd:.4} (expected {CD_EXPECTED} ± {CD_TOL})"),
    )
}

fn c5_wine() -> Outcome {
    let (result, elapsed) = match bench_one(spec("WN"), SEED) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("benchmark failed: {e:#}")),
    };
    let pl = report_of(&result, Method::Plknn);
    let mut detail = format!(
        "PL-kNN accuracy {:.4} ± {:.4} (min {WINE_MIN_ACCURACY}), F1 {:.4} ± {:.4} (min {WINE_MIN_F1}), {:.2} s (limit {} s), no scaling",
        pl.accuracy_mean,
        pl.accuracy_std,
        pl.f1_mean,
        pl.f1_std,
        elapsed.as_secs_f64(),
        WINE_TIME_LIMIT.as_secs()
    );
    let pass = pl.accuracy_mean >= WINE_MIN_ACCURACY
        && pl.f1_mean >= WINE_MIN_F1
        && elapsed < WINE_TIME_LIMIT;
    if !pass {
        // diagnostic only; the criterion is judged on the unscaled run
        let mut scaled = spec("WN");
        scaled.scaling = Scaling::MinMax;
        if let Ok((r, _)) = bench_one(scaled, SEED) {
            let s = report_of(&r, Method::Plknn);
            detail.push_str(&format!(
                "; with min-max scaling: accuracy {:.4}, F1 {:.4}",
                s.accuracy_mean, s.f1_mean
            ));
        }
    }
    outcome(pass, detail)
}

fn c6_hcv() -> Outcome {
    let spec = spec("HCV");
    let data = match plknn::load_dataset(&spec) {
        Ok(d) => d,
        Err(e) => return outcome(false, format!("HCV data not available: {e}")),
    };
    let majority = *data.class_counts().iter().max().unwrap() as f64 / data.len() as f64;
    let (result, _) = match bench_one(spec, SEED) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("benchmark failed: {e:#}")),
    };
    let lm = report_of(&result, Method::Lmknn);
    outcome(
        (lm.accuracy_mean - majority).abs() <= HCV_MAJORITY_TOL
            && lm.accuracy_std <= HCV_MAX_STD
            && lm.f1_mean <= HCV_MAX_F1,
        format!(
            "LMKNN accuracy {:.4} ± {:.4} vs majority fraction {majority:.4} (tol {HCV_MAJORITY_TOL}, std max {HCV_MAX_STD}); F1 {:.4} (max {HCV_MAX_F1})",
            lm.accuracy_mean, lm.accuracy_std, lm.f1_mean
        ),
    )
}

fn c7_indian_liver() -> Outcome {
    let (result, _) = match bench_one(spec("IL"), SEED) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("Indian Liver data not available: {e:#}")),
    };
    let pl = report_of(&result, Method::Plknn).f1_mean;
    let lm = report_of(&result, Method::Lmknn).f1_mean;
    outcome(
        pl - lm >= IL_MIN_F1_GAP,
        format!(
            "PL-kNN F1 {pl:.4} - LMKNN F1 {lm:.4} = {:.4} (min {IL_MIN_F1_GAP})",
            pl - lm
        ),
    )
}

fn c8_bco_knn() -> Outcome {
    let (result, _) = match bench_one(spec("BCO"), SEED) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("benchmark failed: {e:#}")),
    };
    let knn = report_of(&result, Method::Knn);
    let ks: Vec<usize> = result.tuned_k.iter().map(|t| t.2).collect();
    let (lo, hi) = (*ks.iter().min().unwrap(), *ks.iter().max().unwrap());
    outcome(
        knn.accuracy_mean >= BCO_MIN_ACCURACY && lo >= 1 && hi <= 50 && ks.len() == 20,
        format!(
            "k-NN accuracy {:.4} ± {:.4} (min {BCO_MIN_ACCURACY}); tuned k in [{lo}, {hi}] over {} folds",
            knn.accuracy_mean,
            knn.accuracy_std,
            ks.len()
        ),
    )
}

/// Spot checks of the invariant suite; the exhaustive versions live in the
/// per-crate test files.
fn c9_invariants() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    for _ in 0..200 {
        let train = random_dataset(&mut rng, 40, 3, 3);
        let model = fit_plknn(&train).unwrap();
        let scaled = model.with_scaled_weights(rng.gen_range(1e-3..1e3)).unwrap();
        let s: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.5..1.5)).collect();
        if model.predict(&s).unwrap().label != scaled.predict(&s).unwrap().label {
            failures.push("weight scaling changed a label");
            break;
        }
        let (cstar, r) = model.nearest_centroid(&s).unwrap();
        let half = model.select_semicircle(&s, cstar, r).unwrap();
        let full = circle_members(&train, &s, r).unwrap();
        if !half.iter().all(|j| full.contains(j)) {
            failures.push("semicircle not inside circle");
            break;
        }
    }

    let fractions = [0.70, 0.15, 0.15];
    for _ in 0..100 {
        let sizes: Vec<usize> = (0..3).map(|_| rng.gen_range(3..60)).collect();
        let labels: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &n)| vec![c; n])
            .collect();
        let m = labels.len();
        let ds = Dataset::new(
            "s",
            (0..m).map(|i| vec![i as f64]).collect(),
            labels,
            vec!["a".into(), "b".into(), "c".into()],
        )
        .unwrap();
        let plan = SplitPlan {
            n_folds: 2,
            seed: rng.gen(),
            ..SplitPlan::default()
        };
        for split in stratified_splits(&ds, &plan).unwrap() {
            let mut all = split.parts().concat();
            all.sort_unstable();
            if all != (0..m).collect::<Vec<_>>() {
                failures.push("split is not a partition");
            }
            for (p, part) in split.parts().iter().enumerate() {
                for (c, &size) in sizes.iter().enumerate() {
                    let got = part.iter().filter(|&&i| ds.label(i) == c).count() as f64;
                    if (got - fractions[p] * size as f64).abs() >= 1.0 + 1e-9 {
                        failures.push("stratification off by more than one sample");
                    }
                }
            }
        }
        let alloc = allocate(&sizes, &fractions);
        if alloc
            .iter()
            .zip(&sizes)
            .any(|(a, &n)| a.iter().sum::<usize>() != n)
        {
            failures.push("allocation loses samples");
        }
    }

    let dir = tempfile::tempdir().unwrap();
    let mut config = ExperimentConfig::new(vec![spec("WN"), spec("BCO")]);
    config.folds = 5;
    let mut outputs = Vec::new();
    for run in ["a", "b"] {
        let result = run_benchmark(&config).unwrap();
        let out = dir.path().join(run);
        write_outputs(&out, &config, &result).unwrap();
        outputs.push(std::fs::read(out.join(RESULTS_FILE)).unwrap());
    }
    if outputs[0] != outputs[1] {
        failures.push("two identical benchmark runs wrote different results.csv");
    }

    failures.dedup();
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "weight scaling, semicircle containment, split partition/stratification, end-to-end determinism hold".to_string()
        } else {
            failures.join("; ")
        },
    )
}

fn c10_full_benchmark() -> Outcome {
    let config = benchmark_config();
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let result = run_benchmark(&config).unwrap();
    let elapsed = start.elapsed();
    write_outputs(dir.path(), &config, &result).unwrap();
    let files = [
        RESULTS_FILE,
        SUMMARY_FILE,
        WILCOXON_FILE,
        DIAGRAM_FILE,
        PROVENANCE_FILE,
    ];
    let written = files
        .iter()
        .filter(|f| dir.path().join(f).is_file())
        .count();
    let cells = config.datasets.len() * config.methods.len();
    let covered = result.succeeded().len() * config.methods.len();
    let missing: Vec<&str> = result.failures.iter().map(|f| f.dataset.as_str()).collect();
    outcome(
        elapsed < FULL_TIME_LIMIT && written == files.len() && covered == cells && result.records.len() == cells * config.folds,
        format!(
            "{:.1} s (limit {} s); {written}/5 files; {covered}/{cells} (dataset, method) cells; {} records{}",
            elapsed.as_secs_f64(),
            FULL_TIME_LIMIT.as_secs(),
            result.records.len(),
            if missing.is_empty() {
                String::new()
            } else {
                format!("; failed datasets: {}", missing.join(", "))
            }
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("semicircle oracle equivalence", c1_semicircle),
        ("weighted score oracle equivalence", c2_scores),
        ("Wilcoxon exactness", c3_wilcoxon),
        ("Nemenyi critical difference", c4_nemenyi),
        ("Wine distributional reproduction", c5_wine),
        ("LMKNN degeneracy on HCV", c6_hcv),
        ("PL-kNN over LMKNN on Indian Liver", c7_indian_liver),
        ("k-NN baseline on Breast Cancer Original", c8_bco_knn),
        ("invariant suite", c9_invariants),
        ("full 11-dataset benchmark", c10_full_benchmark),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        println!(
            "criterion {:>2} {}: {} - {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail
        );
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
