//! frs: feature selection and classifier evaluation for phishing tables.
//!
//! Subcommands cover the pipeline end to end: `normalize` (debugging aid),
//! `select` (one selector, subset JSON out), `evaluate` (selector ×
//! classifier grid report), and `intersect` (shared features across
//! selection files). Every command is deterministic under a fixed config
//! and seed. Exit codes: 0 success, 2 bad usage or input, 3 computation
//! failure.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use frs_core::classifiers::ClassifierSpec;
use frs_core::dataset::{
    load_arff, load_csv, normalize, write_csv, AliasMap, Dataset, SchemaHints,
};
use frs_core::eval::{run_protocol, universal_features, ProtocolOptions, DEFAULT_FOLDS};
use frs_core::reduct::{Reduct, EPSILON};
use frs_core::selectors::{run_selector, SelectorSpec, DEFAULT_BINS, DEFAULT_DELTA};

/// Environment variable supplying the default worker thread count.
const THREADS_VAR: &str = "FRS_THREADS";

#[derive(Parser)]
#[command(name = "frs", version, about = "Fuzzy-rough feature selection toolkit")]
struct Cli {
    /// Worker threads for data-parallel stages (default: FRS_THREADS, then
    /// all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one feature selector and write the subset as JSON.
    Select(SelectArgs),
    /// Evaluate every selector × classifier pair and write a report.
    Evaluate(EvaluateArgs),
    /// Intersect selection files into the universally shared features.
    Intersect(IntersectArgs),
    /// Load, normalize, and re-emit a dataset as CSV.
    Normalize(NormalizeArgs),
}

#[derive(Args)]
struct SelectArgs {
    /// JSON config supplying any unset flag; flags win on conflict.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dataset file (.arff, or CSV with a header row).
    #[arg(long)]
    data: Option<PathBuf>,
    /// Label column (CSV default: last column; ARFF: result/class/last).
    #[arg(long)]
    label: Option<String>,
    /// frs, frs-core, ig, cfs, dw, all-features, or universal.
    #[arg(long)]
    method: Option<String>,
    /// Selection JSON providing the feature list for --method universal.
    #[arg(long)]
    universal: Option<PathBuf>,
    /// Dependency-degree slack for the frs methods.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Equal-width bins for continuous features in ig.
    #[arg(long)]
    bins: Option<usize>,
    /// Accuracy drop tolerated per elimination step in dw.
    #[arg(long)]
    delta: Option<f64>,
    /// Seed for fold assignment and the dw evaluator.
    #[arg(long)]
    seed: Option<u64>,
    /// Output path (default: <data stem>-<method>.json).
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// JSON config supplying any unset flag; flags win on conflict.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dataset to select on and evaluate against.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Label column of --data.
    #[arg(long)]
    label: Option<String>,
    /// Out-of-sample training dataset; omitted, models cross-validate on
    /// --data instead.
    #[arg(long)]
    train: Option<PathBuf>,
    /// Label column of --train (default: same as --label).
    #[arg(long)]
    train_label: Option<String>,
    /// Comma-separated selector list (default: frs).
    #[arg(long, value_delimiter = ',')]
    selectors: Vec<String>,
    /// Comma-separated classifier list: mlp, rf, smo (default: all three).
    #[arg(long, value_delimiter = ',')]
    classifiers: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    bins: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
    /// Cross-validation folds when no --train is given.
    #[arg(long)]
    k_folds: Option<usize>,
    /// Labels counted as phishing (default: inferred from the label values).
    #[arg(long, value_delimiter = ',')]
    positive_labels: Vec<String>,
    /// Count a three-class middle "suspicious" label as legitimate instead
    /// of phishing.
    #[arg(long)]
    suspicious_as_legitimate: bool,
    /// Selection JSON providing the feature list for the universal selector.
    #[arg(long)]
    universal: Option<PathBuf>,
    /// Report path (default: <data stem>-report.json).
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Also write one CSV row per grid cell.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Also write category,value pairs for a bar chart.
    #[arg(long)]
    chart: Option<PathBuf>,
}

#[derive(Args)]
struct IntersectArgs {
    /// JSON config supplying any unset flag; flags win on conflict.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Two or more selection JSON files, comma-separated.
    #[arg(long, value_delimiter = ',')]
    reducts: Vec<PathBuf>,
    /// Alias CSV (canonical,variant per line) unifying feature names.
    #[arg(long)]
    aliases: Option<PathBuf>,
    /// Output path (default: universal.json).
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct NormalizeArgs {
    /// JSON config supplying any unset flag; flags win on conflict.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    label: Option<String>,
    /// Output path (default: <data stem>-normalized.csv).
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// Optional config-file counterpart of the flags above.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    data: Option<PathBuf>,
    label: Option<String>,
    train: Option<PathBuf>,
    train_label: Option<String>,
    method: Option<String>,
    selectors: Option<Vec<String>>,
    classifiers: Option<Vec<String>>,
    seed: Option<u64>,
    epsilon: Option<f64>,
    delta: Option<f64>,
    bins: Option<usize>,
    k_folds: Option<usize>,
    positive_labels: Option<Vec<String>>,
    suspicious_as_phishing: Option<bool>,
    universal: Option<PathBuf>,
    aliases: Option<PathBuf>,
    reducts: Option<Vec<PathBuf>>,
    output: Option<PathBuf>,
    csv: Option<PathBuf>,
    chart: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(frs_core::Error),
}

impl From<frs_core::Error> for CliError {
    fn from(e: frs_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_input() => 2,
            CliError::Core(_) => 3,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(cli.threads);
    let result = match cli.command {
        Command::Select(args) => run_select(args),
        Command::Evaluate(args) => run_evaluate(args),
        Command::Intersect(args) => run_intersect(args),
        Command::Normalize(args) => run_normalize(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn init_threads(flag: Option<usize>) {
    let n = flag.or_else(|| std::env::var(THREADS_VAR).ok().and_then(|s| s.parse().ok()));
    #[cfg(feature = "parallel")]
    if let Some(n) = n.filter(|&n| n > 0) {
        // a failure here means a pool already exists, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}

fn load_file_config(path: &Option<PathBuf>) -> CliResult<FileConfig> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(frs_core::Error::from)?;
            serde_json::from_str(&text).map_err(|e| {
                CliError::Usage(format!("bad config file {}: {e}", p.display()))
            })
        }
    }
}

/// Load a table by extension: .arff via the ARFF reader, anything else as
/// headered CSV with the label defaulting to the last column.
fn load_table(path: &Path, label: Option<&str>) -> CliResult<Dataset> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
    if ext == "arff" {
        Ok(load_arff(path, label)?)
    } else {
        let label = match label {
            Some(l) => l.to_string(),
            None => last_csv_column(path)?,
        };
        Ok(load_csv(path, &label, &SchemaHints::none())?)
    }
}

fn last_csv_column(path: &Path) -> CliResult<String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(frs_core::Error::from)?;
    let headers = reader.headers().map_err(frs_core::Error::from)?;
    headers
        .iter()
        .last()
        .map(|s| s.trim().to_string())
        .ok_or_else(|| CliError::Usage(format!("{}: no columns found", path.display())))
}

fn parse_selector(
    name: &str,
    epsilon: f64,
    bins: usize,
    delta: f64,
    universal: Option<&Path>,
) -> CliResult<SelectorSpec> {
    Ok(match name {
        "frs" => SelectorSpec::Frs { epsilon },
        "frs-core" => SelectorSpec::FrsCore { epsilon },
        "ig" => SelectorSpec::Ig { bins },
        "cfs" => SelectorSpec::Cfs,
        "dw" => SelectorSpec::Dw { delta },
        "all-features" => SelectorSpec::AllFeatures,
        "universal" => {
            let path = universal.ok_or_else(|| {
                CliError::Usage("the universal selector needs --universal <selection.json>".into())
            })?;
            SelectorSpec::Universal { features: Reduct::load(path)?.selected }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown selector {other:?} (expected frs, frs-core, ig, cfs, dw, \
                 all-features, universal)"
            )))
        }
    })
}

fn parse_classifier(name: &str, seed: u64) -> CliResult<ClassifierSpec> {
    Ok(match name {
        "mlp" => ClassifierSpec::mlp(seed),
        "rf" | "random_forest" | "random-forest" => ClassifierSpec::random_forest(seed),
        "smo" => ClassifierSpec::smo(seed),
        other => {
            return Err(CliError::Usage(format!(
                "unknown classifier {other:?} (expected mlp, rf, smo)"
            )))
        }
    })
}

fn default_output(data: &Path, tag: &str, ext: &str) -> PathBuf {
    let stem = data.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    PathBuf::from(format!("{stem}-{tag}.{ext}"))
}

fn require_data(flag: Option<PathBuf>, cfg: Option<PathBuf>) -> CliResult<PathBuf> {
    flag.or(cfg).ok_or_else(|| CliError::Usage("--data is required".into()))
}

fn run_select(args: SelectArgs) -> CliResult<()> {
    let cfg = load_file_config(&args.config)?;
    let data = require_data(args.data, cfg.data)?;
    let label = args.label.or(cfg.label);
    let method = args.method.or(cfg.method).unwrap_or_else(|| "frs".into());
    let seed = args.seed.or(cfg.seed).unwrap_or(0);
    let epsilon = args.epsilon.or(cfg.epsilon).unwrap_or(EPSILON);
    let bins = args.bins.or(cfg.bins).unwrap_or(DEFAULT_BINS);
    let delta = args.delta.or(cfg.delta).unwrap_or(DEFAULT_DELTA);
    let universal = args.universal.or(cfg.universal);
    let spec = parse_selector(&method, epsilon, bins, delta, universal.as_deref())?;

    let ds = normalize(&load_table(&data, label.as_deref())?)?;
    let reduct = run_selector(&spec, &ds, seed)?;
    let output = args
        .output
        .or(cfg.output)
        .unwrap_or_else(|| default_output(&data, spec.mode_name(), "json"));
    reduct.save(&output)?;

    println!(
        "{}: {} of {} features selected by {}",
        ds.name,
        reduct.selected.len(),
        ds.n_features(),
        reduct.mode
    );
    if let (Some(gamma), Some(full)) = (reduct.gamma, reduct.gamma_full) {
        println!("dependency degree {gamma:.6} against {full:.6} for the full set");
    }
    for name in &reduct.selected {
        println!("  {name}");
    }
    println!("written to {}", output.display());
    Ok(())
}

fn run_evaluate(args: EvaluateArgs) -> CliResult<()> {
    let cfg = load_file_config(&args.config)?;
    let data = require_data(args.data, cfg.data)?;
    let label = args.label.or(cfg.label);
    let train = args.train.or(cfg.train);
    let train_label = args.train_label.or(cfg.train_label).or_else(|| label.clone());
    let seed = args.seed.or(cfg.seed).unwrap_or(0);
    let epsilon = args.epsilon.or(cfg.epsilon).unwrap_or(EPSILON);
    let bins = args.bins.or(cfg.bins).unwrap_or(DEFAULT_BINS);
    let delta = args.delta.or(cfg.delta).unwrap_or(DEFAULT_DELTA);
    let k_folds = args.k_folds.or(cfg.k_folds).unwrap_or(DEFAULT_FOLDS);
    let universal = args.universal.or(cfg.universal);

    let selector_names = if !args.selectors.is_empty() {
        args.selectors
    } else {
        cfg.selectors.unwrap_or_else(|| vec!["frs".into()])
    };
    let classifier_names = if !args.classifiers.is_empty() {
        args.classifiers
    } else {
        cfg.classifiers
            .unwrap_or_else(|| vec!["rf".into(), "mlp".into(), "smo".into()])
    };
    let selectors = selector_names
        .iter()
        .map(|n| parse_selector(n, epsilon, bins, delta, universal.as_deref()))
        .collect::<CliResult<Vec<_>>>()?;
    let classifiers = classifier_names
        .iter()
        .map(|n| parse_classifier(n, seed))
        .collect::<CliResult<Vec<_>>>()?;

    let mut opts = ProtocolOptions::new(seed);
    opts.k_folds = k_folds;
    opts.positive_labels = if !args.positive_labels.is_empty() {
        args.positive_labels
    } else {
        cfg.positive_labels.unwrap_or_default()
    };
    opts.suspicious_as_phishing = if args.suspicious_as_legitimate {
        false
    } else {
        cfg.suspicious_as_phishing.unwrap_or(true)
    };

    let eval_ds = normalize(&load_table(&data, label.as_deref())?)?;
    let train_ds = train
        .map(|p| Ok::<_, CliError>(normalize(&load_table(&p, train_label.as_deref())?)?))
        .transpose()?;

    let report = run_protocol(train_ds.as_ref(), &eval_ds, &selectors, &classifiers, &opts)?;

    let output = args
        .output
        .or(cfg.output)
        .unwrap_or_else(|| default_output(&data, "report", "json"));
    report.save(&output)?;
    if let Some(path) = args.csv.or(cfg.csv) {
        report.write_flat_csv(&path)?;
    }
    if let Some(path) = args.chart.or(cfg.chart) {
        report.write_chart_csv(&path)?;
    }

    println!(
        "{}: {} protocol, positive class {:?}",
        report.dataset, report.protocol, report.positive_labels
    );
    for cell in &report.cells {
        println!(
            "{} x {}: F={:.4} P={:.4} R={:.4} ({} features)",
            cell.selector,
            cell.classifier,
            cell.f_measure,
            cell.precision,
            cell.recall,
            cell.n_features
        );
    }
    println!("written to {}", output.display());
    Ok(())
}

fn run_intersect(args: IntersectArgs) -> CliResult<()> {
    let cfg = load_file_config(&args.config)?;
    let files = if !args.reducts.is_empty() {
        args.reducts
    } else {
        cfg.reducts.unwrap_or_default()
    };
    let reducts = files.iter().map(Reduct::load).collect::<frs_core::Result<Vec<_>>>()?;
    let aliases = match args.aliases.or(cfg.aliases) {
        Some(p) => AliasMap::load(&p)?,
        None => AliasMap::empty(),
    };
    let features = universal_features(&reducts, &aliases)?;

    let combined = Reduct {
        dataset: reducts.iter().map(|r| r.dataset.as_str()).collect::<Vec<_>>().join("+"),
        mode: "universal".into(),
        selected: features,
        gamma: None,
        gamma_full: None,
        trace: Vec::new(),
        scores: None,
    };
    let output = args.output.or(cfg.output).unwrap_or_else(|| PathBuf::from("universal.json"));
    combined.save(&output)?;

    println!(
        "{} features shared across {} selections",
        combined.selected.len(),
        reducts.len()
    );
    for name in &combined.selected {
        println!("  {name}");
    }
    println!("written to {}", output.display());
    Ok(())
}

fn run_normalize(args: NormalizeArgs) -> CliResult<()> {
    let cfg = load_file_config(&args.config)?;
    let data = require_data(args.data, cfg.data)?;
    let label = args.label.or(cfg.label);
    let ds = load_table(&data, label.as_deref())?;
    let norm = normalize(&ds)?;
    let output = args
        .output
        .or(cfg.output)
        .unwrap_or_else(|| default_output(&data, "normalized", "csv"));
    write_csv(&norm.to_dataset(), &output)?;
    println!(
        "{}: {} samples, {} features, {} classes",
        norm.name,
        norm.n_samples(),
        norm.n_features(),
        norm.n_classes()
    );
    println!("written to {}", output.display());
    Ok(())
}
