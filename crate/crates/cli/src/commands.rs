use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use isored::io::{read_matrix_file, write_dense_file, write_matrix_file};
use isored::randgen::{
    gen_sparse_stochastic, make_banded, make_near_averaging, make_two_block, BurrConfig, SparseGenConfig,
    TwoBlockVariant,
};
use isored::reduction::DEFAULT_PIVOT_DELTA;
use isored::symbolic::{reduced_spectrum, Polynomial, WeightedDigraph};
use isored::{
    direct_stationary, isospectral_stationary, perron_frobenius, reduce, select_subset, validate_stochastic, IndexSet,
    ReductionMode, SelectionStrategy, SolveOutcome, SolverConfig, SpectralReport, StochasticMatrix,
};
use isored_bench::{run_comparison, run_on_matrix, summarize, Baseline, RunConfig, Summary};
use serde::Serialize;
use thiserror::Error;

use crate::{
    BaselineArg, BenchArgs, Command, GenArgs, KindArg, MethodArg, ModeArg, ReduceArgs, StationaryArgs, StrategyArg,
    SymreduceArgs, VariantArg,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: isored::Error },

    #[error(transparent)]
    Core(#[from] isored::Error),

    #[error(transparent)]
    Bench(#[from] isored_bench::BenchError),

    #[error("invalid --keep {0:?}: expected a size or a comma-separated list of vertices")]
    Keep(String),

    #[error("{failed} of {total} trials have non-finite residuals")]
    FailedTrials { failed: usize, total: usize },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Spectral { matrix, json } => spectral(&matrix, json),
        Command::Reduce(args) => reduce_cmd(args),
        Command::Symreduce(args) => symreduce(args),
        Command::Stationary(args) => stationary(args),
        Command::Gen(args) => generate(args),
        Command::Bench(args) => bench(args),
    }
}

fn load(path: &Path) -> Result<StochasticMatrix> {
    read_matrix_file(path)
        .and_then(validate_stochastic)
        .map_err(|source| CliError::Input {
            path: path.to_owned(),
            source,
        })
}

enum Keep {
    Size(usize),
    List(Vec<usize>),
}

fn parse_keep(text: &str) -> Result<Keep> {
    let bad = || CliError::Keep(text.to_owned());
    if !text.contains(',') {
        return text.trim().parse().map(Keep::Size).map_err(|_| bad());
    }
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()
        .map(Keep::List)
}

fn strategy(arg: StrategyArg, s: usize, seed: u64) -> SelectionStrategy {
    match arg {
        StrategyArg::First => SelectionStrategy::FirstS(s),
        StrategyArg::Random => SelectionStrategy::RandomS { s, seed },
        StrategyArg::Greedy => SelectionStrategy::PivotGreedy {
            s,
            delta: DEFAULT_PIVOT_DELTA,
        },
    }
}

fn mode(arg: ModeArg) -> ReductionMode {
    match arg {
        ModeArg::Block => ReductionMode::Block,
        ModeArg::Seq => ReductionMode::Sequential,
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn spectral(path: &Path, json: bool) -> Result<()> {
    let a = load(path)?;
    let s = SpectralReport::compute(&a, 0.0)?.summary();
    if json {
        return print_json(&s);
    }
    println!("n             {}", s.n);
    println!("tau           {:.12e}", s.tau);
    println!("rho_i         {:.12e}", s.rho_i);
    println!("gap           {:.12e}", s.gap);
    println!("min entry     {:.12e}", s.m);
    println!("classes       {}", s.num_classes);
    println!("essential     {}", s.num_essential);
    println!("non-critical  {}", s.non_critical);
    Ok(())
}

#[derive(Serialize)]
struct ReduceSidecar {
    kept: Vec<usize>,
    pivot_order: Vec<usize>,
    condition_estimate: f64,
    column_drift: f64,
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn reduce_cmd(args: ReduceArgs) -> Result<()> {
    let a = load(&args.matrix)?;
    let kept = match parse_keep(&args.keep)? {
        Keep::Size(s) => select_subset(&a, &strategy(args.strategy, s, args.seed))?,
        Keep::List(v) => IndexSet::from_one_based(a.n(), &v)?,
    };
    let rec = reduce(&a, &kept, mode(args.mode))?;
    let r_path = with_suffix(&args.out, ".R.mtx");
    let lift_path = with_suffix(&args.out, ".lift.mtx");
    let json_path = with_suffix(&args.out, ".json");
    write_matrix_file(rec.reduced.as_non_negative(), &r_path)?;
    write_dense_file(&rec.lift_matrix(), &lift_path)?;
    let sidecar = ReduceSidecar {
        kept: rec.kept.to_one_based(),
        pivot_order: rec.pivot_order.iter().map(|k| k + 1).collect(),
        condition_estimate: rec.condition_estimate,
        column_drift: rec.column_drift,
    };
    serde_json::to_writer_pretty(File::create(&json_path)?, &sidecar)?;
    println!(
        "reduced {} -> {} vertices, condition estimate {:.3e}",
        a.n(),
        rec.kept.len(),
        rec.condition_estimate
    );
    for p in [&r_path, &lift_path, &json_path] {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn coeff_list(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn symreduce(args: SymreduceArgs) -> Result<()> {
    let g = WeightedDigraph::parse(File::open(&args.graph)?).map_err(|source| CliError::Input {
        path: args.graph.clone(),
        source,
    })?;
    let keep = match parse_keep(&args.keep)? {
        Keep::List(v) => v,
        // a bare number is a single vertex here
        Keep::Size(k) => vec![k],
    };
    let s = IndexSet::from_one_based(g.n(), &keep)?;
    let r = g.graph_reduce(&s)?;
    let labels = s.to_one_based();
    println!("{}", r.n());
    println!("# vertices {labels:?} of the input graph");
    for (i, j, w) in r.edges() {
        println!(
            "{} {} {} / {}  # {}",
            i + 1,
            j + 1,
            coeff_list(w.num()),
            coeff_list(w.den()),
            w
        );
    }
    if let Some(lambda) = args.eval {
        let m = r.evaluate_at(lambda)?;
        println!("# R({lambda})");
        for i in 0..m.nrows() {
            let row: Vec<String> = (0..m.ncols()).map(|j| format!("{:.12e}", m[(i, j)])).collect();
            println!("# {}", row.join(" "));
        }
    }
    if args.spectrum {
        println!("# roots of det(R(lambda) - lambda I)");
        for z in reduced_spectrum(&r)? {
            println!("# {:.12e} {:+.12e}i", z.re, z.im);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct StationaryReport {
    method: String,
    v: Vec<f64>,
    residual: f64,
    iterations: usize,
    converged: bool,
    wall_time: f64,
    kept: Option<Vec<usize>>,
}

fn stationary(args: StationaryArgs) -> Result<()> {
    let a = load(&args.matrix)?;
    let s = args.keep.unwrap_or_else(|| (a.n() / 10).max(1));
    let mut cfg = SolverConfig::default()
        .with_p(args.p)
        .with_seed(args.seed)
        .with_strategy(strategy(args.strategy, s, args.seed));
    cfg.mode = mode(args.mode);
    let out: SolveOutcome = match args.method {
        MethodArg::Pf => perron_frobenius(&a, &cfg)?,
        MethodArg::Iso => isospectral_stationary(&a, &cfg)?,
        MethodArg::Direct => direct_stationary(&a)?,
    };
    let report = StationaryReport {
        method: format!("{:?}", out.method),
        v: out.v.as_slice().to_vec(),
        residual: out.residual,
        iterations: out.iterations,
        converged: out.converged,
        wall_time: out.wall_time.as_secs_f64(),
        kept: out.reduction.as_ref().map(|r| r.kept.to_one_based()),
    };
    if args.json {
        return print_json(&report);
    }
    println!("method      {}", report.method);
    println!("residual    {:.6e}", report.residual);
    println!("iterations  {}", report.iterations);
    println!("converged   {}", report.converged);
    println!("wall time   {:.6} s", report.wall_time);
    if let Some(kept) = &report.kept {
        println!("kept        {} vertices", kept.len());
    }
    println!("v");
    let mut stdout = io::stdout().lock();
    isored::io::write_vector(&report.v, &mut stdout)?;
    Ok(())
}

fn generate(args: GenArgs) -> Result<()> {
    let sparse = |n: usize| -> Result<StochasticMatrix> {
        Ok(gen_sparse_stochastic(&SparseGenConfig {
            n,
            nnz_per_col: args.nnz,
            burr: BurrConfig::new(args.alpha)?,
            seed: args.seed,
        })?)
    };
    let a = match args.kind {
        KindArg::BurrSparse => sparse(args.n)?,
        KindArg::TwoBlock => {
            let b = match &args.b {
                Some(path) => load(path)?,
                None => sparse(args.n)?,
            };
            let variant = match args.variant {
                VariantArg::Padded => TwoBlockVariant::Padded,
                VariantArg::LWeighted => TwoBlockVariant::LWeighted(None),
                VariantArg::SingleRow => TwoBlockVariant::SingleRow(None),
            };
            let (a, kept) = make_two_block(args.corner, args.leak, &b, &variant)?;
            eprintln!("B occupies vertices {}..={}", kept.as_slice()[0] + 1, a.n());
            a
        }
        KindArg::Banded => make_banded(args.n, args.band)?,
        KindArg::NearAvg => make_near_averaging(args.n, args.c, args.seed)?,
    };
    write_matrix_file(a.as_non_negative(), &args.out)?;
    println!(
        "wrote {} ({}x{}, {} nonzeros)",
        args.out.display(),
        a.n(),
        a.n(),
        a.nnz()
    );
    Ok(())
}

fn print_summary(s: &Summary) {
    println!("trials       {} ({} convergent)", s.trials, s.convergent);
    println!("             {:>12} {:>12} {:>12}", "q1", "median", "q3");
    for (name, q) in [
        ("rho_i", &s.rho_i),
        ("t2/t1", &s.time_ratio),
        ("e2/e1", &s.error_ratio),
        ("d", &s.distance),
    ] {
        println!("{name:<12} {:>12.4e} {:>12.4e} {:>12.4e}", q.q1, q.median, q.q3);
    }
    println!("e2 <= e1     {:.1}%", 100.0 * s.scheme_not_worse);
}

fn bench(args: BenchArgs) -> Result<()> {
    let cfg = RunConfig {
        trials: args.trials,
        n: args.n,
        nnz: args.nnz,
        alpha: args.alpha,
        s: args.keep,
        seed: args.seed,
        baseline: match args.baseline {
            BaselineArg::Direct => Baseline::Direct,
            BaselineArg::Pf => Baseline::PerronFrobenius,
        },
        p: args.p,
        parallel: args.parallel,
        output: args.out.clone(),
    };
    let records = match &args.matrix {
        Some(path) => run_on_matrix(&load(path)?, &cfg)?,
        None => run_comparison(&cfg)?,
    };
    let summary = summarize(&records)?;
    print_summary(&summary);
    if let Some(path) = &args.out {
        println!("wrote {}", path.display());
    }
    let failed = records.iter().filter(|r| !r.has_finite_residuals()).count();
    if failed > 0 {
        return Err(CliError::FailedTrials {
            failed,
            total: records.len(),
        });
    }
    Ok(())
}
