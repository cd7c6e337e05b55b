//! Command-line front end for the HHO-MLP intrusion-detection pipeline:
//! dataset preparation, wrapper feature selection, training, evaluation,
//! and the swarm-size sweep. Every run writes a digest-stamped manifest so
//! results can be reproduced and compared byte for byte.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;

/// Error carrying the documented process exit code:
/// 1 usage, 2 data, 3 compute.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(hho_mlp::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(e) if e.is_data_error() => 2,
            CliError::Core(_) => 3,
        }
    }
}

impl From<hho_mlp::Error> for CliError {
    fn from(e: hho_mlp::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "hho-mlp",
    version,
    about = "Harris Hawks-optimized MLP intrusion detection pipeline"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate synthetic traffic fixtures (CSV plus matching schema).
    Gen(GenArgs),
    /// Parse, encode, normalize and split a traffic CSV into cached
    /// train/test datasets.
    Prepare(PrepareArgs),
    /// Run wrapper feature selection over a prepared training cache.
    Select(SelectArgs),
    /// Train the detector on a prepared training cache.
    Train(TrainArgs),
    /// Score a trained model against a prepared cache.
    Evaluate(EvaluateArgs),
    /// Sweep swarm sizes and report the error trend.
    BenchSwarm(BenchSwarmArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Fixture kind: kdd, separable or informative.
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Noise-feature count for the informative fixture.
    #[arg(long)]
    noise: Option<usize>,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Schema output path (defaults to the CSV path with `.schema`).
    #[arg(long)]
    schema_out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct PrepareArgs {
    /// Input traffic CSV.
    #[arg(long)]
    input: PathBuf,
    /// Schema file path, or the builtin name `kdd41`.
    #[arg(long)]
    schema: String,
    /// Directory receiving train.cache, test.cache and prepare.manifest.
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long)]
    train_fraction: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Disable the label-stratified split.
    #[arg(long)]
    no_stratify: bool,
    /// Input has a header line.
    #[arg(long)]
    header: bool,
    /// Categorical policy: ordinal or one-hot.
    #[arg(long)]
    policy: Option<String>,
    /// Normalization range lower end.
    #[arg(long)]
    na: Option<f64>,
    /// Normalization range upper end.
    #[arg(long)]
    nb: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SelectArgs {
    /// Prepared training cache.
    #[arg(long)]
    cache: PathBuf,
    /// Output mask file.
    #[arg(long)]
    out: PathBuf,
    /// Manifest path (defaults to `<out>.manifest`).
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long)]
    population: Option<usize>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Error-term weight of the selection cost.
    #[arg(long)]
    alpha: Option<f64>,
    /// Feature-ratio weight of the selection cost.
    #[arg(long)]
    beta_fs: Option<f64>,
    #[arg(long)]
    inner_population: Option<usize>,
    #[arg(long)]
    inner_iterations: Option<usize>,
    /// Hidden layers of the inner evaluator, comma-separated.
    #[arg(long)]
    inner_hidden: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct TrainArgs {
    /// Prepared training cache.
    #[arg(long)]
    cache: PathBuf,
    /// Optional feature-mask file from `select`.
    #[arg(long)]
    mask: Option<PathBuf>,
    /// Output model file.
    #[arg(long)]
    out: PathBuf,
    /// Manifest path (defaults to `<out>.manifest`).
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Hidden layer sizes, comma-separated.
    #[arg(long)]
    hidden: Option<String>,
    #[arg(long)]
    population: Option<usize>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    weight_min: Option<f64>,
    #[arg(long)]
    weight_max: Option<f64>,
    /// Expected input width; checked against the cache and mask before any
    /// compute starts.
    #[arg(long)]
    inputs: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Trained model file.
    #[arg(long)]
    model: PathBuf,
    /// Prepared cache to score against.
    #[arg(long)]
    cache: PathBuf,
    /// Write the structured report here as well as stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Append one CSV row here (header written for new files).
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct BenchSwarmArgs {
    /// Prepared training cache.
    #[arg(long)]
    cache: PathBuf,
    /// Swarm sizes to sweep, comma-separated.
    #[arg(long)]
    sizes: Option<String>,
    /// Seeds to run per size, comma-separated.
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long)]
    iterations: Option<usize>,
    /// Hidden layer sizes, comma-separated.
    #[arg(long)]
    hidden: Option<String>,
    #[arg(long)]
    weight_min: Option<f64>,
    #[arg(long)]
    weight_max: Option<f64>,
    /// Per-cell sweep table (CSV with header).
    #[arg(long)]
    out: PathBuf,
    /// Two-column plot data: size, median final MSE.
    #[arg(long)]
    plot: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let benign = matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return if benign {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };

    let result = match cli.command {
        Command::Gen(args) => commands::gen(args),
        Command::Prepare(args) => commands::prepare(args),
        Command::Select(args) => commands::select(args),
        Command::Train(args) => commands::train(args),
        Command::Evaluate(args) => commands::evaluate(args),
        Command::BenchSwarm(args) => commands::bench_swarm(args),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
