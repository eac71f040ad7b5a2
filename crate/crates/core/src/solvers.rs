//! Stationary-vector solvers: power iteration, the reduce-solve-lift
//! scheme, and a dense direct baseline.

use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lu::DenseLu;
use crate::matrix::{euclidean_norm, residual, ProbabilityVector, StochasticMatrix};
use crate::reduction::{
    reconstruct_stationary, reduce, select_subset, ReductionMode, ReductionRecord, SelectionStrategy,
    SINGULAR_CONDITION,
};

/// Attempts with a fresh random subset after a singular elimination.
pub const MAX_SELECTION_RETRIES: usize = 5;

/// Largest kept set solved directly when the inner solver is automatic.
pub const DIRECT_INNER_LIMIT: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InnerSolver {
    /// Direct when `|S| <= 200`, power iteration otherwise.
    Auto,
    PerronFrobenius,
    Direct,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Stop once the squared update norm drops below `10^(-2p)`.
    pub p: u32,
    pub max_iters: usize,
    /// Seeds the random simplex start.
    pub seed: u64,
    /// Kept-set choice for the isospectral solver; carries `s`.
    pub strategy: SelectionStrategy,
    pub mode: ReductionMode,
    pub inner: InnerSolver,
    /// Re-reduce when the estimated inner radius of `R` exceeds this.
    pub regap_threshold: f64,
    pub max_rereductions: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            p: 8,
            max_iters: 1_000_000,
            seed: 0,
            strategy: SelectionStrategy::RandomS { s: 1, seed: 0 },
            mode: ReductionMode::Sequential,
            inner: InnerSolver::Auto,
            regap_threshold: 0.999,
            max_rereductions: 3,
        }
    }
}

impl SolverConfig {
    pub fn with_strategy(mut self, strategy: SelectionStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_p(mut self, p: u32) -> Self {
        self.p = p;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::PreconditionViolation("precision p must be at least 1".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::PreconditionViolation("max_iters must be at least 1".into()));
        }
        if !(self.regap_threshold > 0.0 && self.regap_threshold < 1.0) {
            return Err(Error::PreconditionViolation(format!(
                "regap threshold {} must lie in (0, 1)",
                self.regap_threshold
            )));
        }
        Ok(())
    }

    fn tolerance_sq(&self) -> f64 {
        10f64.powi(-2 * self.p as i32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    PerronFrobenius,
    Isospectral,
    Direct,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub v: ProbabilityVector,
    /// Matrix-vector products, or inner iterations for the isospectral route.
    pub iterations: usize,
    /// `||A v - v||_2` against the input matrix.
    pub residual: f64,
    pub wall_time: Duration,
    pub method: Method,
    /// False when power iteration stopped at `max_iters`; `v` is then the
    /// last iterate.
    pub converged: bool,
    pub reduction: Option<ReductionRecord>,
    pub rereductions: usize,
}

/// Uniform point of the simplex: normalized i.i.d. exponentials.
pub fn random_simplex_point(n: usize, seed: u64) -> ProbabilityVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    ProbabilityVector::from_weights(w).expect("exponential samples are positive")
}

/// Iterates `v <- A v` from a random simplex point until the squared
/// update norm falls below `10^(-2p)`.
pub fn perron_frobenius(a: &StochasticMatrix, cfg: &SolverConfig) -> Result<SolveOutcome> {
    cfg.validate()?;
    let start = Instant::now();
    let n = a.n();
    let tol = cfg.tolerance_sq();
    let mut v = random_simplex_point(n, cfg.seed).into_vec();
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iters {
        a.mul_vec_into(&v, &mut next);
        iterations += 1;
        let mut delta = 0.0;
        let mut sum = 0.0;
        for (x, y) in next.iter().zip(&v) {
            delta += (x - y) * (x - y);
            sum += x;
        }
        // column sums are 1 up to rounding; keep the iterate on the simplex
        next.iter_mut().for_each(|x| *x /= sum);
        std::mem::swap(&mut v, &mut next);
        if delta < tol {
            converged = true;
            break;
        }
    }
    let v = ProbabilityVector::from_weights(v)?;
    let residual = residual(a, v.as_slice())?;
    Ok(SolveOutcome {
        v,
        iterations,
        residual,
        wall_time: start.elapsed(),
        method: Method::PerronFrobenius,
        converged,
        reduction: None,
        rereductions: 0,
    })
}

/// Solves `(A - I) v = 0`, `sum v = 1` by LU, the last equation replaced
/// by the normalization.
pub fn direct_stationary(a: &StochasticMatrix) -> Result<SolveOutcome> {
    let start = Instant::now();
    let v = direct_solve_dense(a.to_dense())?;
    let v = ProbabilityVector::from_weights(v)?;
    let residual = residual(a, v.as_slice())?;
    Ok(SolveOutcome {
        v,
        iterations: 1,
        residual,
        wall_time: start.elapsed(),
        method: Method::Direct,
        converged: true,
        reduction: None,
        rereductions: 0,
    })
}

fn direct_solve_dense(mut m: DMatrix<f64>) -> Result<Vec<f64>> {
    let n = m.nrows();
    for i in 0..n {
        m[(i, i)] -= 1.0;
    }
    for j in 0..n {
        m[(n - 1, j)] = 1.0;
    }
    let lu = DenseLu::factor(&m).ok_or(Error::SingularSystem)?;
    if !(lu.condition_estimate() <= SINGULAR_CONDITION) {
        return Err(Error::SingularSystem);
    }
    let mut rhs = vec![0.0; n];
    rhs[n - 1] = 1.0;
    // entries are non-negative in exact arithmetic
    Ok(lu.solve(&rhs).into_iter().map(|x| x.max(0.0)).collect())
}

/// Power-iteration estimate of the inner spectral radius on the zero-sum
/// hyperplane. With a stationary vector the operator is deflated as
/// `x -> A x - v* sum(x)`; without one each iterate is re-centred.
pub fn estimate_inner_radius(
    a: &StochasticMatrix,
    v_star: Option<&ProbabilityVector>,
    seed: u64,
    max_iters: usize,
) -> Result<f64> {
    const WINDOW: usize = 25;
    const REL_TOL: f64 = 1e-3;
    let n = a.n();
    if n == 1 {
        return Ok(0.0);
    }
    if let Some(v) = v_star {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    center(&mut x);
    let norm = euclidean_norm(&x);
    x.iter_mut().for_each(|v| *v /= norm);
    let mut y = vec![0.0; n];
    // log growth per step, summed over the current window
    let mut window_log = 0.0;
    let mut previous: Option<f64> = None;
    for k in 1..=max_iters {
        let s: f64 = x.iter().sum();
        a.mul_vec_into(&x, &mut y);
        match v_star {
            Some(v) => y.iter_mut().zip(v.as_slice()).for_each(|(yi, vi)| *yi -= vi * s),
            None => center(&mut y),
        }
        let ny = euclidean_norm(&y);
        if ny < 1e-13 {
            // the hyperplane collapses: nothing but rounding left
            return Ok(ny);
        }
        window_log += ny.ln();
        y.iter_mut().for_each(|v| *v /= ny);
        std::mem::swap(&mut x, &mut y);
        if k % WINDOW == 0 {
            let est = (window_log / WINDOW as f64).exp();
            window_log = 0.0;
            if let Some(prev) = previous {
                if (est - prev).abs() <= REL_TOL * est.max(prev) {
                    return Ok(est.min(1.0));
                }
            }
            previous = Some(est);
        }
    }
    Err(Error::NoConvergence(max_iters))
}

fn center(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
}

/// Reduce to a kept set, solve the reduced system, lift back.
pub fn isospectral_stationary(a: &StochasticMatrix, cfg: &SolverConfig) -> Result<SolveOutcome> {
    cfg.validate()?;
    let start = Instant::now();
    let mut strategy = cfg.strategy;
    let mut retries = 0;
    let mut rereductions = 0;
    loop {
        let rec = match select_subset(a, &strategy).and_then(|kept| reduce(a, &kept, cfg.mode)) {
            Ok(rec) => rec,
            Err(Error::SingularElimination { .. } | Error::NoViablePivot { .. })
                if matches!(strategy, SelectionStrategy::RandomS { .. }) && retries < MAX_SELECTION_RETRIES =>
            {
                retries += 1;
                strategy = reseed(&strategy, retries as u64);
                continue;
            }
            Err(Error::NoViablePivot { .. }) => {
                return Err(Error::SingularElimination {
                    condition: f64::INFINITY,
                })
            }
            Err(e) => return Err(e),
        };
        let s = rec.kept.len();
        let use_direct = match cfg.inner {
            InnerSolver::Direct => true,
            InnerSolver::PerronFrobenius => false,
            InnerSolver::Auto => s <= DIRECT_INNER_LIMIT,
        };
        let inner = if use_direct {
            direct_stationary(&rec.reduced)?
        } else {
            if rereductions < cfg.max_rereductions {
                let rho = estimate_inner_radius(&rec.reduced, None, cfg.seed, 10_000);
                let still_slow = match rho {
                    Ok(r) => r > cfg.regap_threshold,
                    Err(Error::NoConvergence(_)) => true,
                    Err(e) => return Err(e),
                };
                if still_slow {
                    rereductions += 1;
                    let seed = match strategy {
                        SelectionStrategy::RandomS { seed, .. } => seed,
                        _ => cfg.seed,
                    };
                    strategy = SelectionStrategy::RandomS {
                        s,
                        seed: mix(seed, 1000 + rereductions as u64),
                    };
                    continue;
                }
            }
            perron_frobenius(&rec.reduced, cfg)?
        };
        let v = reconstruct_stationary(&rec, &inner.v)?;
        let residual = residual(a, v.as_slice())?;
        return Ok(SolveOutcome {
            v,
            iterations: inner.iterations,
            residual,
            wall_time: start.elapsed(),
            method: Method::Isospectral,
            converged: inner.converged,
            reduction: Some(rec),
            rereductions,
        });
    }
}

fn reseed(strategy: &SelectionStrategy, attempt: u64) -> SelectionStrategy {
    match *strategy {
        SelectionStrategy::RandomS { s, seed } => SelectionStrategy::RandomS {
            s,
            seed: mix(seed, attempt),
        },
        other => other,
    }
}

/// SplitMix64 step of `seed + stream`.
pub fn mix(seed: u64, stream: u64) -> u64 {
    let mut z = seed.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
