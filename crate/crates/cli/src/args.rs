use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 42;
pub const SEED_ENV: &str = "MLD_SEED";

/// Concurrence analysis, resampling and evaluation for multilabel datasets.
///
/// Datasets are ARFF files. Labels come from a MULAN XML file (`--xml`, or a
/// sibling `<stem>.xml` when present) or from a MEKA `-C n` relation name.
#[derive(Debug, Parser)]
#[command(name = "concur", version, about, long_about = None)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dataset summary: sizes, Card, Dens, MeanIR, MaxIR, SCUMBLE.
    Info(InfoArgs),
    /// Concurrence report with optional chord diagram.
    Concurrence(ConcurrenceArgs),
    /// Decouple high-concurrence instances with REMEDIAL.
    Remedial(RemedialArgs),
    /// Label powerset random over- or undersampling.
    Resample(ResampleArgs),
    /// Repeated k-fold train/test files.
    Partition(PartitionArgs),
    /// Nearest-neighbor baseline predictions as CSV.
    Predict(PredictArgs),
    /// Score a prediction CSV against ground truth.
    Evaluate(EvaluateArgs),
    /// Convert between MULAN/MEKA and dense/sparse ARFF.
    Convert(ConvertArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input ARFF file.
    pub input: PathBuf,
    /// MULAN label XML for the input.
    #[arg(long)]
    pub xml: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    /// One or more ARFF files.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// MULAN label XML (only with a single input).
    #[arg(long)]
    pub xml: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConcurrenceArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Number of difficult labels to list.
    #[arg(long, default_value_t = 10)]
    pub top_k: usize,
    /// Write a chord diagram of label co-occurrence to this SVG file.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Labels drawn in the chord diagram: `all` or a comma-separated list of
    /// names. Defaults to the difficult labels and their majority partners.
    #[arg(long, requires = "svg")]
    pub chord_labels: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StyleArg {
    Dense,
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Mulan,
    Meka,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    LpRos,
    LpRus,
}

#[derive(Debug, Args)]
pub struct RemedialArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Output ARFF file; the label XML is written next to it.
    pub output: PathBuf,
    /// Number of successive passes.
    #[arg(long, default_value_t = 1)]
    pub iterations: usize,
    #[arg(long, value_enum, default_value_t = StyleArg::Dense)]
    pub style: StyleArg,
}

#[derive(Debug, Args)]
pub struct ResampleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Output ARFF file; the label XML is written next to it.
    pub output: PathBuf,
    #[arg(long, value_enum)]
    pub method: Method,
    /// Share of the dataset size to add or remove.
    #[arg(long, default_value_t = 10.0)]
    pub percentage: f64,
    /// Random seed (falls back to MLD_SEED, then 42).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = StyleArg::Dense)]
    pub style: StyleArg,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 5)]
    pub folds: usize,
    #[arg(long, default_value_t = 2)]
    pub reps: usize,
    /// Random seed (falls back to MLD_SEED, then 42).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Directory receiving the fold files; created if missing.
    #[arg(long)]
    pub outdir: PathBuf,
    #[arg(long, value_enum, default_value_t = StyleArg::Dense)]
    pub style: StyleArg,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Training ARFF file.
    #[arg(long)]
    pub train: PathBuf,
    /// Test ARFF file.
    #[arg(long)]
    pub test: PathBuf,
    /// MULAN label XML shared by both files.
    #[arg(long)]
    pub xml: Option<PathBuf>,
    /// Output CSV.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Ground-truth ARFF file.
    #[arg(long)]
    pub truth: PathBuf,
    /// MULAN label XML for the ground truth.
    #[arg(long)]
    pub xml: Option<PathBuf>,
    /// Prediction CSV: one row per instance, one score in [0, 1] per label.
    #[arg(long)]
    pub pred: PathBuf,
    /// Scores at or above this value count as predicted labels.
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Output ARFF file; MULAN output also gets a label XML next to it.
    pub output: PathBuf,
    #[arg(long, value_enum, default_value_t = StyleArg::Dense)]
    pub style: StyleArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Mulan)]
    pub format: FormatArg,
}
