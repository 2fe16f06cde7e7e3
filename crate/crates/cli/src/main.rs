//! `cpdetect`: detect and analyze core-periphery structure in transaction
//! networks, one deterministic subcommand per pipeline stage.

mod commands;
mod docs;
mod error;
mod windows;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cpdetect::{NullMode, Scale};

use commands::detect::Algorithm;

#[derive(Parser)]
#[command(
    name = "cpdetect",
    version,
    about = "Core-periphery analysis of timestamped transaction networks",
    after_help = "Pipeline: aggregate -> detect -> test -> metrics. Every \
                  command is deterministic given its inputs and --seed."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Aggregate a transaction CSV into windowed binary networks.
    Aggregate(AggregateCli),
    /// Detect core-periphery structure in every window.
    Detect(DetectCli),
    /// Test detected pairs against random-graph null models.
    Test(TestCli),
    /// Tabulate densities, classes, stability, flows, and attributes.
    Metrics(MetricsCli),
    /// Generate a synthetic transaction log with planted structure.
    Generate(GenerateCli),
    /// Exhaustive optimum labeling for a small network (at most 9 nodes).
    Oracle(OracleCli),
}

#[derive(Args)]
struct AggregateCli {
    /// Transaction CSV with header `timestamp,lender,borrower,amount`.
    #[arg(long)]
    input: PathBuf,
    /// Window length: day, week, month, quarter, or static.
    #[arg(long, value_parser = parse_scale)]
    scale: Scale,
    /// Output directory for edge lists and the manifest.
    #[arg(long)]
    out: PathBuf,
    /// Skip malformed rows (reported on stderr) instead of failing.
    #[arg(long)]
    lenient: bool,
}

#[derive(Args)]
struct DetectCli {
    /// Detector to run.
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    /// Label-switching runs per window (kmer only).
    #[arg(long, default_value_t = 10, value_parser = parse_positive)]
    runs: usize,
    /// Local-search restarts per window (be only).
    #[arg(long, default_value_t = 50, value_parser = parse_positive)]
    restarts: usize,
    /// Seed for all randomized detectors.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// An `.edges` file or a directory of them.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output directory for labeling and skip records.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TestCli {
    /// Directory holding `<stem>.edges` plus `<stem>.labeling.json` pairs.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output directory; defaults to the input directory (in-place update).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Null-model samples per tested pair (at least 100).
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Family-wise significance level, in (0, 1).
    #[arg(long, default_value_t = 0.05, value_parser = parse_alpha)]
    alpha: f64,
    /// Null model: `pair` (size-matched per pair) or `full` (whole network).
    #[arg(long, default_value = "pair", value_parser = parse_null)]
    null: NullMode,
    /// Seed for null-model sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct MetricsCli {
    /// Directory of tested windows (`.edges` + flagged `.labeling.json`).
    #[arg(long = "in")]
    input: PathBuf,
    /// Optional `node_id,attribute` CSV for composition tables.
    #[arg(long)]
    attributes: Option<PathBuf>,
    /// Output directory for the CSV tables.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GenerateCli {
    /// Generator config JSON.
    #[arg(long)]
    config: PathBuf,
    /// Seed for the whole synthetic log.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory for `transactions.csv` and `truth.json`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OracleCli {
    /// Edge-list file of the network to solve exhaustively.
    #[arg(long = "in")]
    input: PathBuf,
}

fn parse_scale(s: &str) -> Result<Scale, String> {
    s.parse::<Scale>().map_err(|e| e.to_string())
}

fn parse_null(s: &str) -> Result<NullMode, String> {
    s.parse::<NullMode>().map_err(|e| e.to_string())
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("alpha must lie strictly between 0 and 1, got {v}"))
    }
}

fn parse_positive(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0 {
        Ok(v)
    } else {
        Err("value must be positive".to_string())
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests print to stdout and succeed; real
            // usage errors print to stderr and exit 1.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Aggregate(args) => commands::aggregate::run(&commands::aggregate::AggregateArgs {
            input: args.input,
            scale: args.scale,
            out: args.out,
            lenient: args.lenient,
        }),
        Command::Detect(args) => commands::detect::run(&commands::detect::DetectArgs {
            algorithm: args.algorithm,
            runs: args.runs,
            restarts: args.restarts,
            seed: args.seed,
            input: args.input,
            out: args.out,
        }),
        Command::Test(args) => commands::test::run(&commands::test::TestArgs {
            input: args.input,
            out: args.out,
            samples: args.samples,
            alpha: args.alpha,
            null: args.null,
            seed: args.seed,
        }),
        Command::Metrics(args) => commands::metrics::run(&commands::metrics::MetricsArgs {
            input: args.input,
            attributes: args.attributes,
            out: args.out,
        }),
        Command::Generate(args) => commands::generate::run(&commands::generate::GenerateArgs {
            config: args.config,
            seed: args.seed,
            out: args.out,
        }),
        Command::Oracle(args) => {
            commands::oracle::run(&commands::oracle::OracleArgs { input: args.input })
        }
    };
    match result {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
