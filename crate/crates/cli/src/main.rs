use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use plknn::data::{ColumnRef, ImputePolicy, Scaling};
use plknn::DatasetSpec;
use plknn_cli::analysis::Analysis;
use plknn_cli::commands::{delimiter_byte, fit_model, predict_table, read_queries};
use plknn_cli::report::{render, ReportFormat};
use plknn_cli::store::{read_results, write_outputs};
use plknn_cli::{run_benchmark, ExperimentConfig, Method, ModelFile};

#[derive(Parser)]
#[command(
    name = "plknn",
    version,
    about = "Parameterless k-NN: fit, predict, benchmark and report"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit one method on a whole dataset and write a model file.
    Fit(FitArgs),
    /// Classify the rows of a feature file with a saved model.
    Predict(PredictArgs),
    /// Run the repeated stratified-split benchmark described by a config.
    Benchmark(BenchmarkArgs),
    /// Rebuild the summary tables from a benchmark's results.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalingArg {
    None,
    Minmax,
}

impl From<ScalingArg> for Scaling {
    fn from(s: ScalingArg) -> Self {
        match s {
            ScalingArg::None => Scaling::None,
            ScalingArg::Minmax => Scaling::MinMax,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ImputeArg {
    Median,
    Drop,
}

impl From<ImputeArg> for ImputePolicy {
    fn from(s: ImputeArg) -> Self {
        match s {
            ImputeArg::Median => ImputePolicy::Median,
            ImputeArg::Drop => ImputePolicy::DropRows,
        }
    }
}

#[derive(Args)]
struct FitArgs {
    /// Experiment config to take the dataset entry from.
    #[arg(long, conflicts_with = "data")]
    config: Option<PathBuf>,
    /// Dataset name within the config; required when it lists several.
    #[arg(long, requires = "config")]
    dataset: Option<String>,
    /// Delimited data file, as an alternative to --config.
    #[arg(long, requires = "label")]
    data: Option<PathBuf>,
    /// Label column of --data: zero-based index or header name.
    #[arg(long)]
    label: Option<String>,
    /// --data has a header row.
    #[arg(long)]
    header: bool,
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// plknn, smknn, lmknn or knn.
    #[arg(long, default_value = "plknn")]
    method: String,
    /// Model file to write.
    #[arg(long)]
    out: PathBuf,
    /// Seed of the split used to tune k (knn only).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = plknn::DEFAULT_K_MAX)]
    kmax: usize,
    #[arg(long, value_enum)]
    scaling: Option<ScalingArg>,
    #[arg(long, value_enum)]
    impute: Option<ImputeArg>,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    model: PathBuf,
    /// Delimited file of feature rows, without a label column.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    header: bool,
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    format: ReportFormat,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchmarkArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    folds: Option<usize>,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum)]
    scaling: Option<ScalingArg>,
    #[arg(long, value_enum)]
    impute: Option<ImputeArg>,
    /// Output directory; defaults to the config's `out`, then `results`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Format of the summary printed to stdout.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Args)]
struct ReportArgs {
    /// Benchmark output directory or its results.csv.
    results: PathBuf,
    /// Significance level for the similarity markers; defaults to the
    /// benchmark's.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fit(args: FitArgs) -> anyhow::Result<()> {
    let method: Method = args.method.parse()?;
    let mut spec = match (&args.config, &args.data) {
        (Some(path), _) => {
            let config = ExperimentConfig::load(path)?;
            match &args.dataset {
                Some(name) => config
                    .datasets
                    .into_iter()
                    .find(|d| &d.name == name)
                    .with_context(|| format!("no dataset `{name}` in {}", path.display()))?,
                None if config.datasets.len() == 1 => config.datasets.into_iter().next().unwrap(),
                None => bail!(
                    "{} lists several datasets; pick one with --dataset",
                    path.display()
                ),
            }
        }
        (None, Some(data)) => {
            let label = args.label.as_deref().expect("clap requires --label");
            let column = label
                .parse::<usize>()
                .map(ColumnRef::Index)
                .unwrap_or_else(|_| ColumnRef::Name(label.to_string()));
            let name = data
                .file_stem()
                .map_or("data".into(), |s| s.to_string_lossy().into_owned());
            let mut spec = DatasetSpec::new(name, data, column);
            spec.has_header = args.header;
            spec.delimiter = args.delimiter;
            spec
        }
        (None, None) => bail!("give either --config or --data"),
    };
    if let Some(s) = args.scaling {
        spec.scaling = s.into();
    }
    if let Some(i) = args.impute {
        spec.impute = i.into();
    }
    let (model, summary) = fit_model(&spec, method, args.seed, args.kmax)?;
    model.save(&args.out)?;
    print!("{summary}");
    println!("Model written to {}", args.out.display());
    Ok(())
}

fn predict(args: PredictArgs) -> anyhow::Result<()> {
    let model = ModelFile::load(&args.model)?;
    let queries = read_queries(&args.input, args.header, delimiter_byte(args.delimiter)?)?;
    let table = predict_table(&model, &queries, args.format)?;
    emit(&table, args.out.as_ref())
}

fn benchmark(args: BenchmarkArgs) -> anyhow::Result<()> {
    let mut config = ExperimentConfig::load(&args.config)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(folds) = args.folds {
        config.folds = folds;
    }
    if let Some(k) = args.kmax {
        config.k_max = k;
    }
    if let Some(alpha) = args.alpha {
        config.alpha = alpha;
    }
    if let Some(s) = args.scaling {
        config.set_scaling(s.into());
    }
    if let Some(i) = args.impute {
        config.set_impute(i.into());
    }
    let out = args
        .out
        .or_else(|| config.out.clone())
        .unwrap_or_else(|| PathBuf::from("results"));
    config.out = None;

    let result = run_benchmark(&config)?;
    let analysis = write_outputs(&out, &config, &result)?;
    print!("{}", render(&analysis, &result.failures, args.format));
    eprintln!("Results written to {}", out.display());
    if !result.failures.is_empty() {
        let names: Vec<&str> = result.failures.iter().map(|f| f.dataset.as_str()).collect();
        bail!("{} dataset(s) failed: {}", names.len(), names.join(", "));
    }
    Ok(())
}

fn report(args: ReportArgs) -> anyhow::Result<()> {
    let stored = read_results(&args.results)?;
    let p = &stored.provenance;
    let alpha = args.alpha.unwrap_or(p.alpha);
    let analysis =
        Analysis::from_records(&stored.records, &p.datasets, &p.methods, alpha, p.metric)?;
    emit(
        &render(&analysis, &p.failures, args.format),
        args.out.as_ref(),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Fit(a) => fit(a),
        Command::Predict(a) => predict(a),
        Command::Benchmark(a) => benchmark(a),
        Command::Report(a) => report(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
