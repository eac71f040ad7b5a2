mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "isored",
    version,
    about = "Isospectral reduction and stationary measures of stochastic matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diameter, inner spectral radius, gap, minimum entry and class structure.
    Spectral {
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Reduce onto a kept set; writes R, the lift and a JSON sidecar.
    Reduce(ReduceArgs),
    /// Exact reduction of a rational-function weighted graph.
    Symreduce(SymreduceArgs),
    /// Stationary vector by power iteration, reduction or a direct solve.
    Stationary(StationaryArgs),
    /// Write a generated matrix in MatrixMarket format.
    Gen(GenArgs),
    /// Time the isospectral scheme against a baseline over random trials.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    First,
    Random,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Block,
    Seq,
}

#[derive(Args)]
struct ReduceArgs {
    matrix: PathBuf,
    /// Kept-set size, or a comma-separated list of 1-based vertices
    /// (a single vertex as `k,`).
    #[arg(long)]
    keep: String,
    #[arg(long, value_enum, default_value = "first")]
    strategy: StrategyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "seq")]
    mode: ModeArg,
    /// Output prefix: PREFIX.R.mtx, PREFIX.lift.mtx and PREFIX.json.
    #[arg(short, long, default_value = "reduced")]
    out: PathBuf,
}

#[derive(Args)]
struct SymreduceArgs {
    graph: PathBuf,
    /// Comma-separated 1-based kept vertices.
    #[arg(long)]
    keep: String,
    /// Also print the reduced matrix at this value of lambda.
    #[arg(long)]
    eval: Option<f64>,
    /// Also print the roots of det(R(lambda) - lambda I).
    #[arg(long)]
    spectrum: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Pf,
    Iso,
    Direct,
}

#[derive(Args)]
struct StationaryArgs {
    matrix: PathBuf,
    #[arg(long, value_enum, default_value = "iso")]
    method: MethodArg,
    /// Stop power iteration once the squared update is below 10^(-2p).
    #[arg(long, default_value_t = 8)]
    p: u32,
    /// Kept-set size for the isospectral method.
    #[arg(long)]
    keep: Option<usize>,
    #[arg(long, value_enum, default_value = "random")]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "seq")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    BurrSparse,
    TwoBlock,
    Banded,
    NearAvg,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Padded,
    LWeighted,
    SingleRow,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Dimension; for two-block, the size of the B block.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    nnz: usize,
    #[arg(long, default_value_t = 0.2)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Two-block: weight of the eliminated corner, in (0, 1/2).
    #[arg(long = "a", default_value_t = 0.25)]
    corner: f64,
    /// Two-block: mass sent to the eliminated block.
    #[arg(long = "p", default_value_t = 0.15)]
    leak: f64,
    #[arg(long, value_enum, default_value = "padded")]
    variant: VariantArg,
    /// Two-block: read B from this file instead of drawing it.
    #[arg(long)]
    b: Option<PathBuf>,
    /// Banded: half-bandwidth m.
    #[arg(long, default_value_t = 2)]
    band: usize,
    /// Near-averaging: decay rate c.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(short, long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaselineArg {
    Direct,
    Pf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    nnz: usize,
    #[arg(long, default_value_t = 0.2)]
    alpha: f64,
    #[arg(long, default_value_t = 90)]
    keep: usize,
    #[arg(long, default_value_t = 36)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    p: u32,
    #[arg(long, value_enum, default_value = "direct")]
    baseline: BaselineArg,
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    /// Run every trial on this matrix instead of generating one.
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::CliError::FailedTrials { failed, total }) => {
            eprintln!("{failed} of {total} trials have non-finite residuals");
            ExitCode::FAILURE
        }
        Err(commands::CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
