use std::path::PathBuf;
use std::time::Instant;

use isored::randgen::{gen_sparse_stochastic, BurrConfig, SparseGenConfig};
use isored::solvers::mix;
use isored::{
    direct_stationary, distance, inner_spectral_radius, isospectral_stationary, perron_frobenius, Result as CoreResult,
    SelectionStrategy, SolveOutcome, SolverConfig, StochasticMatrix,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::record::{write_csv_file, BenchRecord, Flag};
use crate::{BenchError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Baseline {
    Direct,
    PerronFrobenius,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub trials: usize,
    pub n: usize,
    pub nnz: usize,
    pub alpha: f64,
    /// Kept-set size for the isospectral scheme.
    pub s: usize,
    /// Base seed; trial `t` uses the stream `mix(seed, t)`.
    pub seed: u64,
    pub baseline: Baseline,
    /// Power-iteration precision, shared by the baseline and the inner solve.
    pub p: u32,
    /// Worker threads; 1 runs the trials in order on the calling thread.
    pub parallel: usize,
    /// Where [`run_comparison`] writes the CSV, if anywhere.
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            trials: 36,
            n: 1000,
            nnz: 4,
            alpha: 0.2,
            s: 90,
            seed: 1,
            baseline: Baseline::Direct,
            p: 8,
            parallel: 1,
            output: None,
        }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(BenchError::InvalidConfig(msg));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.nnz == 0 || self.nnz > self.n {
            return bad(format!("nnz {} must lie in 1..={}", self.nnz, self.n));
        }
        if self.s == 0 || self.s > self.n {
            return bad(format!("kept size {} must lie in 1..={}", self.s, self.n));
        }
        if self.parallel == 0 {
            return bad("parallel must be at least 1".into());
        }
        BurrConfig::new(self.alpha)?;
        Ok(())
    }

    fn solver_config(&self, trial_seed: u64) -> SolverConfig {
        SolverConfig::default()
            .with_p(self.p)
            .with_seed(mix(trial_seed, 1))
            .with_strategy(SelectionStrategy::RandomS {
                s: self.s,
                seed: mix(trial_seed, 2),
            })
    }
}

/// Runs every trial; failures are recorded in the rows, never returned.
/// Writes the CSV when `cfg.output` is set.
pub fn run_comparison(cfg: &RunConfig) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    let burr = BurrConfig::new(cfg.alpha)?;
    run_trials(cfg, |t| {
        let seed = mix(cfg.seed, t as u64);
        let a = gen_sparse_stochastic(&SparseGenConfig {
            n: cfg.n,
            nnz_per_col: cfg.nnz,
            burr,
            seed,
        })?;
        Ok(compare_on(&a, cfg, seed))
    })
}

/// Like [`run_comparison`] on one fixed matrix; trials differ only in the
/// solver seeds. `cfg.n`, `cfg.nnz` and `cfg.alpha` are ignored.
pub fn run_on_matrix(a: &StochasticMatrix, cfg: &RunConfig) -> Result<Vec<BenchRecord>> {
    let cfg = RunConfig {
        n: a.n(),
        nnz: 1,
        s: cfg.s.min(a.n()),
        ..cfg.clone()
    };
    cfg.validate()?;
    run_trials(&cfg, |t| Ok(compare_on(a, &cfg, mix(cfg.seed, t as u64))))
}

fn run_trials<F>(cfg: &RunConfig, trial: F) -> Result<Vec<BenchRecord>>
where
    F: Fn(usize) -> Result<BenchRecord> + Sync + Send,
{
    let records = if cfg.parallel == 1 {
        (0..cfg.trials).map(&trial).collect::<Result<Vec<_>>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallel)
            .build()
            .map_err(|e| BenchError::InvalidConfig(e.to_string()))?;
        pool.install(|| (0..cfg.trials).into_par_iter().map(&trial).collect::<Result<Vec<_>>>())?
    };
    if let Some(path) = &cfg.output {
        write_csv_file(&records, path)?;
    }
    Ok(records)
}

/// One trial on a given matrix: `rho_i`, the timed baseline and the timed
/// isospectral scheme (selection, reduction, inner solve and lift).
/// `cfg.s` is clamped to the matrix size.
pub fn compare_on(a: &StochasticMatrix, cfg: &RunConfig, trial_seed: u64) -> BenchRecord {
    let mut flags = Vec::new();
    let rho_i = inner_spectral_radius(a).unwrap_or_else(|_| {
        flags.push(Flag::RhoFailed);
        f64::NAN
    });
    let mut solver = cfg.solver_config(trial_seed);
    solver.strategy = solver.strategy.with_size(cfg.s.min(a.n()));

    let start = Instant::now();
    let base = match cfg.baseline {
        Baseline::Direct => direct_stationary(a),
        Baseline::PerronFrobenius => perron_frobenius(a, &solver),
    };
    let t1 = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let scheme = isospectral_stationary(a, &solver);
    let t2 = start.elapsed().as_secs_f64();

    let (e1, v1) = outcome(base, Flag::BaselineFailed, Flag::BaselineNotConverged, &mut flags);
    let (e2, v2) = outcome(scheme, Flag::SchemeFailed, Flag::SchemeNotConverged, &mut flags);
    let d = match (v1, v2) {
        (Some(x), Some(y)) => distance(&x, &y).unwrap_or(f64::NAN),
        _ => f64::NAN,
    };
    BenchRecord {
        rho_i,
        t1,
        t2,
        e1,
        e2,
        d,
        flags,
    }
}

fn outcome(
    r: CoreResult<SolveOutcome>,
    failed: Flag,
    not_converged: Flag,
    flags: &mut Vec<Flag>,
) -> (f64, Option<Vec<f64>>) {
    match r {
        Ok(out) => {
            if !out.converged {
                flags.push(not_converged);
            }
            (out.residual, Some(out.v.as_slice().to_vec()))
        }
        Err(_) => {
            flags.push(failed);
            (f64::NAN, None)
        }
    }
}
