use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use segstrat::{Execution, GaConfig, Method, SplitSpec};

mod commands;
mod table;

/// Stratify pixel-labeled segmentation datasets into K folds.
#[derive(Debug, Parser)]
#[command(name = "segstrat", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count pixels per class in a directory of index masks.
    Ingest(IngestArgs),
    /// Assign samples to folds.
    Split(SplitArgs),
    /// Score an existing assignment.
    Evaluate(EvaluateArgs),
    /// Report class cardinality, ubiquity, imbalance and entropy.
    Complexity(ComplexityArgs),
    /// Compare methods over repeated reshuffles of the dataset.
    Benchmark(BenchmarkArgs),
    /// Find the optimal LWD by exhaustive enumeration.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
struct IngestArgs {
    /// Directory of single-channel index masks.
    #[arg(long)]
    masks: PathBuf,
    /// Number of classes; pixel values 0..N are class indices.
    #[arg(long, conflicts_with = "class_names", required_unless_present = "class_names")]
    classes: Option<usize>,
    /// Comma-separated class names, in pixel-value order.
    #[arg(long, value_delimiter = ',')]
    class_names: Option<Vec<String>>,
    /// Pixel values to drop from every count (e.g. 255).
    #[arg(long, value_delimiter = ',')]
    ignore: Vec<u32>,
    /// Histogram file to write (.json or .csv).
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct FoldArgs {
    /// Number of folds; proportions default to uniform.
    #[arg(long, short = 'k')]
    folds: Option<usize>,
    /// Comma-separated fold proportions summing to 1.
    #[arg(long, value_delimiter = ',')]
    proportions: Option<Vec<f64>>,
    #[arg(long, env = "SEGSTRAT_SEED", default_value_t = 0)]
    seed: u64,
}

impl FoldArgs {
    fn spec(&self) -> anyhow::Result<SplitSpec> {
        let spec = match (&self.proportions, self.folds) {
            (Some(r), Some(k)) if r.len() != k => {
                anyhow::bail!("--folds {k} does not match {} proportions", r.len())
            }
            (Some(r), _) => SplitSpec::new(r.clone(), self.seed)?,
            (None, Some(k)) => SplitSpec::uniform(k, self.seed)?,
            (None, None) => anyhow::bail!("either --folds or --proportions is required"),
        };
        Ok(spec)
    }
}

#[derive(Debug, Args)]
struct GaArgs {
    #[arg(long, default_value_t = 50)]
    generations: usize,
    #[arg(long, default_value_t = 100)]
    population: usize,
    #[arg(long, default_value_t = 0.5)]
    gene_mating_prob: f64,
    #[arg(long, default_value_t = 0.2)]
    mutation_prob: f64,
    #[arg(long, default_value_t = 3)]
    tournament_size: usize,
    #[arg(long, default_value_t = 1)]
    elite_count: usize,
    #[arg(long, default_value_t = 1)]
    swaps_per_mutation: usize,
    /// Evaluate fitness on a single thread.
    #[arg(long)]
    sequential: bool,
}

impl GaArgs {
    fn config(&self, seed: u64) -> GaConfig {
        GaConfig {
            generations: self.generations,
            population: self.population,
            gene_mating_prob: self.gene_mating_prob,
            individual_mutation_prob: self.mutation_prob,
            tournament_size: self.tournament_size,
            elite_count: self.elite_count,
            swaps_per_mutation: self.swaps_per_mutation,
            seed,
            execution: execution(self.sequential),
        }
    }
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

#[derive(Debug, Args)]
struct SplitArgs {
    /// Histogram file (.json or .csv).
    histograms: PathBuf,
    #[arg(long, short, default_value = "wdes")]
    method: Method,
    #[command(flatten)]
    folds: FoldArgs,
    #[command(flatten)]
    ga: GaArgs,
    /// Assignment document to write.
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    histograms: PathBuf,
    assignment: PathBuf,
    /// Also write the similarity report as JSON.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ComplexityArgs {
    histograms: PathBuf,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchmarkArgs {
    histograms: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "random,ips,wdes")]
    methods: Vec<Method>,
    #[arg(long, short, default_value_t = 5)]
    repeats: usize,
    #[command(flatten)]
    folds: FoldArgs,
    #[command(flatten)]
    ga: GaArgs,
    /// Include wall-clock timings in the written report.
    #[arg(long)]
    record_timings: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    histograms: PathBuf,
    #[command(flatten)]
    folds: FoldArgs,
    /// Refuse to enumerate more assignments than this.
    #[arg(long, default_value_t = segstrat::oracle::DEFAULT_LIMIT)]
    limit: u128,
    /// Maximum number of optimal assignments to keep.
    #[arg(long, default_value_t = segstrat::oracle::DEFAULT_WITNESS_CAP)]
    witnesses: usize,
    #[arg(long)]
    sequential: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest(args) => commands::ingest(args),
        Command::Split(args) => commands::split(args),
        Command::Evaluate(args) => commands::evaluate(args),
        Command::Complexity(args) => commands::complexity(args),
        Command::Benchmark(args) => commands::benchmark(args),
        Command::Oracle(args) => commands::oracle(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
