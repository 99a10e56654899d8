use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qamplify_core::Execution;

/// Hybrid quantum-classical backorder classifier.
#[derive(Debug, Parser)]
#[command(name = "qamplify", version, about)]
pub struct Cli {
    /// Run every data-parallel loop on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Clean a raw backorder CSV and write 4-component train/test sets.
    Preprocess(PreprocessArgs),
    /// Train the hybrid model on a preprocessed CSV.
    Train(TrainArgs),
    /// Score a model on a preprocessed CSV.
    Evaluate(EvaluateArgs),
    /// Attribute one row's backorder probability to its features.
    Explain(ExplainArgs),
    /// Cross-validated paired t-test against a baseline.
    Crossval(CrossvalArgs),
    /// Print the quantum layer's intermediate states for one input.
    Circuit(CircuitArgs),
    /// Write a seeded synthetic raw CSV with the backorder dataset's columns.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct PreprocessArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Training split CSV.
    #[arg(long)]
    pub out_data: PathBuf,
    /// Test split CSV; defaults to `<out-data stem>_test.csv` beside it.
    #[arg(long)]
    pub out_test: Option<PathBuf>,
    #[arg(long)]
    pub out_artifacts: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Target column; `went_on_backorder` or `went_to_backorder` when omitted.
    #[arg(long)]
    pub label_column: Option<String>,
    #[arg(long, default_value_t = 5.0)]
    pub vif_threshold: f64,
    /// JSON sampling plan (split sizes, ratios, NearMiss k).
    #[arg(long)]
    pub sampling: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub data: PathBuf,
    /// JSON training configuration; missing keys take their defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub history: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Preprocessing artifacts to reference from the model file.
    #[arg(long)]
    pub artifacts: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub report: PathBuf,
    #[arg(long)]
    pub roc: PathBuf,
    #[arg(long, default_value_t = qamplify_core::metrics::DEFAULT_IBA_ALPHA)]
    pub iba_alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExplainMethod {
    Lime,
    Shap,
}

#[derive(Debug, Args)]
pub struct ExplainArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
    /// Zero-based data row.
    #[arg(long)]
    pub row: usize,
    #[arg(long, value_enum)]
    pub method: ExplainMethod,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write `feature,value` rows here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 5000)]
    pub samples: usize,
    #[arg(long)]
    pub kernel_width: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Baseline {
    Logreg,
    #[value(name = "self")]
    SelfModel,
    Random,
}

#[derive(Debug, Args)]
pub struct CrossvalArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value_t = 10)]
    pub folds: usize,
    #[arg(long, value_enum, default_value_t = Baseline::Logreg)]
    pub against: Baseline,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON training configuration for the hybrid model.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CircuitArgs {
    /// SEL weights JSON, or a model file; zero angles when omitted.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Four comma-separated reals.
    #[arg(long, allow_hyphen_values = true)]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 5000)]
    pub rows: usize,
    #[arg(long, default_value_t = 1000)]
    pub backorders: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}
