//! Numeric isospectral reduction at `lambda = 1`.
//!
//! For a column-stochastic `A` and a kept vertex set `S` the reduction is
//! the Schur complement
//!
//! ```text
//! R = A_SS - A_SS' (A_S'S' - I)^{-1} A_S'S        (S' = complement of S)
//! ```
//!
//! which is again column-stochastic. The stationary vector of `A` is
//! recovered from that of `R` through the lift `-(A_S'S' - I)^{-1} A_S'S`.
//!
//! Two routes are provided. [`reduce_block`] evaluates the formula with one
//! dense LU solve. [`reduce_sequential`] removes the vertices of `S'` one
//! at a time with `r_ij = a_ij + a_ik a_kj / (1 - a_kk)`, on a sparse
//! working matrix. Its pivot denominator `1 - a_kk` is computed as the
//! off-diagonal mass of column `k`, so no step ever subtracts.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use nalgebra::DMatrix;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lu::DenseLu;
use crate::matrix::{project_columns, IndexSet, NonNegativeMatrix, ProbabilityVector, StochasticMatrix};

/// Above this 1-norm condition estimate `(I - A_S'S')` counts as singular.
pub const SINGULAR_CONDITION: f64 = 1e14;

/// Default viability margin: a pivot needs `a_kk < 1 - delta`.
pub const DEFAULT_PIVOT_DELTA: f64 = 1e-8;

/// How the kept set `S` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SelectionStrategy {
    /// `S = {0, .., s-1}`.
    FirstS(usize),
    /// Uniform `s`-subset from a seeded generator.
    RandomS { s: usize, seed: u64 },
    /// Repeatedly marks for elimination the vertex with the smallest
    /// diagonal of the partially reduced matrix; keeps the last `s`, or
    /// more when only non-viable pivots remain.
    PivotGreedy { s: usize, delta: f64 },
}

impl SelectionStrategy {
    pub fn size(&self) -> usize {
        match *self {
            SelectionStrategy::FirstS(s) => s,
            SelectionStrategy::RandomS { s, .. } => s,
            SelectionStrategy::PivotGreedy { s, .. } => s,
        }
    }

    /// Same strategy with a different kept size.
    pub fn with_size(&self, s: usize) -> Self {
        match *self {
            SelectionStrategy::FirstS(_) => SelectionStrategy::FirstS(s),
            SelectionStrategy::RandomS { seed, .. } => SelectionStrategy::RandomS { s, seed },
            SelectionStrategy::PivotGreedy { delta, .. } => SelectionStrategy::PivotGreedy { s, delta },
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let s = self.size();
        if s == 0 || s > n {
            return Err(Error::PreconditionViolation(format!(
                "kept size {s} must lie in 1..={n}"
            )));
        }
        if let SelectionStrategy::PivotGreedy { delta, .. } = *self {
            if !(delta > 0.0 && delta < 1.0) {
                return Err(Error::PreconditionViolation(format!(
                    "pivot delta {delta} must lie in (0, 1)"
                )));
            }
        }
        Ok(())
    }
}

/// One vertex removal: `v_k = sum_j row_j v_j / denom` over the vertices
/// still present when `k` was eliminated.
#[derive(Debug, Clone, PartialEq)]
pub struct EliminationStep {
    pub vertex: usize,
    pub denom: f64,
    pub row: Vec<(usize, f64)>,
}

/// The reconstruction operator `v_S -> v_S'`.
#[derive(Debug, Clone, PartialEq)]
pub enum Lift {
    /// Dense `|S'| x |S|` matrix `-(A_S'S' - I)^{-1} A_S'S`, rows in the
    /// order of the complement.
    Block(DMatrix<f64>),
    /// Per-vertex factors, applied in reverse elimination order.
    Steps(Vec<EliminationStep>),
}

/// Output of a reduction.
#[derive(Debug, Clone)]
pub struct ReductionRecord {
    pub kept: IndexSet,
    /// Column-stochastic reduced matrix over `kept`, always dense.
    pub reduced: StochasticMatrix,
    pub lift: Lift,
    /// Eliminated vertices in elimination order.
    pub pivot_order: Vec<usize>,
    /// Block route: 1-norm condition estimate of `I - A_S'S'`. Sequential
    /// route: the largest pivot amplification `1 / (1 - a_kk)`.
    pub condition_estimate: f64,
    /// Largest `|column sum - 1|` of the reduced matrix before it was
    /// re-projected onto exact column sums.
    pub column_drift: f64,
}

impl ReductionRecord {
    fn identity(a: &StochasticMatrix) -> Self {
        let n = a.n();
        let reduced = StochasticMatrix::from_dense(a.to_dense()).expect("input already validated");
        Self {
            kept: IndexSet::full(n),
            reduced,
            lift: Lift::Block(DMatrix::zeros(0, n)),
            pivot_order: Vec::new(),
            condition_estimate: 1.0,
            column_drift: 0.0,
        }
    }

    pub fn eliminated(&self) -> Vec<usize> {
        self.kept.complement()
    }

    /// Dense `|S'| x |S|` lift, rows ordered like [`Self::eliminated`].
    pub fn lift_matrix(&self) -> DMatrix<f64> {
        match &self.lift {
            Lift::Block(m) => m.clone(),
            Lift::Steps(_) => {
                let s = self.kept.len();
                let elim = self.eliminated();
                let mut out = DMatrix::zeros(elim.len(), s);
                for b in 0..s {
                    let mut unit = vec![0.0; s];
                    unit[b] = 1.0;
                    let full = self.lift_vector(&unit);
                    for (r, &k) in elim.iter().enumerate() {
                        out[(r, b)] = full[k];
                    }
                }
                out
            }
        }
    }

    /// Extends a vector on `S` to the full vertex set, unnormalized.
    fn lift_vector(&self, v_kept: &[f64]) -> Vec<f64> {
        let n = self.kept.universe();
        let mut v = vec![0.0; n];
        for (a, k) in self.kept.iter().enumerate() {
            v[k] = v_kept[a];
        }
        match &self.lift {
            Lift::Block(m) => {
                for (r, k) in self.kept.complement().into_iter().enumerate() {
                    v[k] = (0..v_kept.len()).map(|a| m[(r, a)] * v_kept[a]).sum();
                }
            }
            Lift::Steps(steps) => {
                for st in steps.iter().rev() {
                    let acc: f64 = st.row.iter().map(|&(j, w)| w * v[j]).sum();
                    v[st.vertex] = acc / st.denom;
                }
            }
        }
        v
    }
}

/// `A_SS - A_SS' (A_S'S' - lambda I)^{-1} A_S'S` for any square matrix and
/// scalar `lambda`. Used for reductions away from `lambda = 1`.
pub fn reduce_at(m: &DMatrix<f64>, kept: &IndexSet, lambda: f64) -> Result<DMatrix<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if kept.universe() != m.nrows() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: kept.universe(),
        });
    }
    let s = kept.as_slice();
    let c = kept.complement();
    let a_ss = crate::matrix::submatrix(m, s, s)?;
    if c.is_empty() {
        return Ok(a_ss);
    }
    let a_sc = crate::matrix::submatrix(m, s, &c)?;
    let a_cs = crate::matrix::submatrix(m, &c, s)?;
    let mut shifted = crate::matrix::submatrix(m, &c, &c)?;
    for d in 0..c.len() {
        shifted[(d, d)] -= lambda;
    }
    let lu = DenseLu::factor(&shifted).ok_or(Error::SingularElimination {
        condition: f64::INFINITY,
    })?;
    let cond = lu.condition_estimate();
    if !(cond <= SINGULAR_CONDITION) {
        return Err(Error::SingularElimination { condition: cond });
    }
    let x = lu.solve_matrix(&a_cs);
    Ok(a_ss - a_sc * x)
}

/// Block reduction through one LU solve of `I - A_S'S'`.
pub fn reduce_block(a: &StochasticMatrix, kept: &IndexSet) -> Result<ReductionRecord> {
    check_universe(a, kept)?;
    if kept.is_full() {
        return Ok(ReductionRecord::identity(a));
    }
    let s = kept.as_slice();
    let c = kept.complement();
    let a_ss = a.submatrix(s, s)?;
    let a_sc = a.submatrix(s, &c)?;
    let a_cs = a.submatrix(&c, s)?;
    let mut i_minus = -a.submatrix(&c, &c)?;
    for d in 0..c.len() {
        i_minus[(d, d)] += 1.0;
    }
    let lu = DenseLu::factor(&i_minus).ok_or(Error::SingularElimination {
        condition: f64::INFINITY,
    })?;
    // ||I - A_S'S'||_1 <= 2, so a tiny block is as bad as an ill-conditioned
    // one; the absolute inverse norm also catches nearly closed classes
    let condition = lu.condition_estimate().max(lu.inverse_norm1_estimate());
    if !(condition <= SINGULAR_CONDITION) {
        return Err(Error::SingularElimination { condition });
    }
    // lift = (I - A_S'S')^{-1} A_S'S, entrywise non-negative in exact arithmetic
    let mut lift = lu.solve_matrix(&a_cs);
    lift.iter_mut().for_each(|v| *v = v.max(0.0));
    let mut r = a_ss + a_sc * &lift;
    r.iter_mut().for_each(|v| *v = v.max(0.0));
    let (reduced, column_drift) = reproject(r)?;
    Ok(ReductionRecord {
        kept: kept.clone(),
        reduced,
        lift: Lift::Block(lift),
        pivot_order: c,
        condition_estimate: condition,
        column_drift,
    })
}

fn check_universe(a: &StochasticMatrix, kept: &IndexSet) -> Result<()> {
    if kept.universe() != a.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: kept.universe(),
        });
    }
    Ok(())
}

fn reproject(r: DMatrix<f64>) -> Result<(StochasticMatrix, f64)> {
    let drift = r
        .column_iter()
        .map(|c| (c.iter().sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max);
    let reduced = project_columns(NonNegativeMatrix::from_dense(r)?)?;
    Ok((reduced, drift))
}

/// Removes the single vertex `k`: `r_ij = a_ij + a_ik a_kj / (1 - a_kk)`.
pub fn eliminate_node(a: &StochasticMatrix, k: usize) -> Result<ReductionRecord> {
    let n = a.n();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k + 1, n });
    }
    if a.get(k, k) >= 1.0 - 1e-12 {
        return Err(Error::AbsorbingPivot(k + 1));
    }
    if n == 1 {
        return Err(Error::InvalidIndexSet("cannot eliminate the only vertex".into()));
    }
    let kept = IndexSet::new(n, (0..n).filter(|&i| i != k).collect())?;
    reduce_sequential_with(a, &kept, PivotRule::Given(vec![k]), 1e-12)
}

/// Order in which the sequential route picks pivots.
#[derive(Debug, Clone, PartialEq)]
pub enum PivotRule {
    /// Among viable pivots, the one creating the least fill
    /// (`in-degree * out-degree`), ties by smallest index.
    MinFill,
    /// Exactly this order; every vertex must be viable when its turn comes.
    Given(Vec<usize>),
}

/// Sequential reduction with the default pivot rule and margin.
pub fn reduce_sequential(a: &StochasticMatrix, kept: &IndexSet) -> Result<ReductionRecord> {
    reduce_sequential_with(a, kept, PivotRule::MinFill, DEFAULT_PIVOT_DELTA)
}

/// Once the live part holds at least this fraction of nonzeros it is moved
/// to a dense buffer and finished there.
const DENSE_SWITCH: f64 = 0.1;

/// Eliminates the complement of `kept` one vertex at a time.
///
/// Elimination starts on a sparse working copy and continues densely once
/// fill makes the remaining matrix dense. With [`PivotRule::MinFill`] a
/// non-viable vertex is postponed until elimination elsewhere has made it
/// viable; the call fails only when every remaining vertex is non-viable.
pub fn reduce_sequential_with(
    a: &StochasticMatrix,
    kept: &IndexSet,
    rule: PivotRule,
    delta: f64,
) -> Result<ReductionRecord> {
    check_universe(a, kept)?;
    if kept.is_full() {
        return Ok(ReductionRecord::identity(a));
    }
    let n = a.n();
    let complement = kept.complement();
    let given = match rule {
        PivotRule::Given(order) => {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != complement {
                return Err(Error::InvalidIndexSet(
                    "pivot order must be a permutation of the eliminated set".into(),
                ));
            }
            Some(order)
        }
        PivotRule::MinFill => None,
    };

    let mut work = WorkMatrix::new(a);
    let mut steps = Vec::with_capacity(complement.len());
    let mut pending = vec![false; n];
    for &k in &complement {
        pending[k] = true;
    }
    let mut remaining = complement.len();
    let mut deferred = vec![false; n];
    let mut next_given = 0;
    // min-fill queue; entries go stale when degrees change and are skipped
    let mut queue: BinaryHeap<Reverse<(usize, usize)>> =
        complement.iter().map(|&k| Reverse((work.fill(k), k))).collect();

    // sparse phase
    while remaining > 0 && !work.is_dense_enough() {
        let k = match &given {
            Some(order) => {
                let k = order[next_given];
                if work.denom(k) <= delta {
                    return Err(Error::AbsorbingPivot(k + 1));
                }
                next_given += 1;
                k
            }
            None => {
                let Some(Reverse((fill, k))) = queue.pop() else { break };
                if !pending[k] || deferred[k] || fill != work.fill(k) {
                    continue;
                }
                if work.denom(k) <= delta {
                    deferred[k] = true;
                    continue;
                }
                k
            }
        };
        pending[k] = false;
        remaining -= 1;
        steps.push(work.eliminate(k));
        if given.is_none() {
            for &v in &work.touched {
                if pending[v] && !deferred[v] {
                    queue.push(Reverse((work.fill(v), v)));
                }
            }
        }
    }

    let s = kept.as_slice();
    let mut r = DMatrix::zeros(s.len(), s.len());
    if remaining == 0 {
        let mut pos = vec![usize::MAX; n];
        for (p, &k) in s.iter().enumerate() {
            pos[k] = p;
        }
        for (b, &j) in s.iter().enumerate() {
            for &(i, v) in &work.cols[j] {
                r[(pos[i], b)] = v.max(0.0);
            }
        }
    } else {
        let order = match &given {
            Some(order) => order[next_given..].to_vec(),
            None => {
                let mut p: Vec<usize> = (0..n).filter(|&k| pending[k]).collect();
                p.sort_by_key(|&k| (work.fill(k), k));
                p
            }
        };
        let mut dense = DenseWork::from_sparse(&work);
        dense.eliminate_all(&order, delta, given.is_some(), &mut steps)?;
        for (b, &j) in s.iter().enumerate() {
            for (p, &i) in s.iter().enumerate() {
                r[(p, b)] = dense.get(i, j).max(0.0);
            }
        }
    }

    let amplification = steps.iter().fold(1.0f64, |m, st| m.max(1.0 / st.denom));
    let pivot_order = steps.iter().map(|st| st.vertex).collect();
    let (reduced, column_drift) = reproject(r)?;
    Ok(ReductionRecord {
        kept: kept.clone(),
        reduced,
        lift: Lift::Steps(steps),
        pivot_order,
        condition_estimate: amplification,
        column_drift,
    })
}

/// Sparse working copy. Columns hold sorted `(row, value)` entries among
/// live vertices; `rows[i]` lists the columns with an entry in row `i` and
/// may still name eliminated columns, which are skipped on use.
struct WorkMatrix {
    cols: Vec<Vec<(usize, f64)>>,
    rows: Vec<Vec<usize>>,
    dead: Vec<bool>,
    /// Off-diagonal entries per column and per row.
    in_deg: Vec<usize>,
    out_deg: Vec<usize>,
    nnz: usize,
    live: usize,
    /// Vertices whose degrees the last elimination changed.
    touched: Vec<usize>,
}

impl WorkMatrix {
    fn new(a: &StochasticMatrix) -> Self {
        let n = a.n();
        let cols: Vec<Vec<(usize, f64)>> = (0..n).map(|j| a.column_entries(j)).collect();
        let mut rows = vec![Vec::new(); n];
        let mut in_deg = vec![0; n];
        let mut out_deg = vec![0; n];
        let mut nnz = 0;
        for (j, col) in cols.iter().enumerate() {
            for &(i, _) in col {
                rows[i].push(j);
                nnz += 1;
                if i != j {
                    in_deg[j] += 1;
                    out_deg[i] += 1;
                }
            }
        }
        Self {
            cols,
            rows,
            dead: vec![false; n],
            in_deg,
            out_deg,
            nnz,
            live: n,
            touched: Vec::new(),
        }
    }

    fn is_dense_enough(&self) -> bool {
        self.nnz as f64 >= DENSE_SWITCH * (self.live * self.live) as f64
    }

    /// `1 - a_kk` as the off-diagonal mass of column `k`.
    fn denom(&self, k: usize) -> f64 {
        self.cols[k].iter().filter(|&&(i, _)| i != k).map(|&(_, v)| v).sum()
    }

    /// Fill created by eliminating `k`: `in-degree * out-degree`.
    fn fill(&self, k: usize) -> usize {
        self.in_deg[k] * self.out_deg[k]
    }

    fn eliminate(&mut self, k: usize) -> EliminationStep {
        let denom = self.denom(k);
        let col_k = std::mem::take(&mut self.cols[k]);
        self.nnz -= col_k.len();
        let col_k: Vec<(usize, f64)> = col_k.into_iter().filter(|&(i, _)| i != k).collect();
        let row_k: Vec<usize> = std::mem::take(&mut self.rows[k])
            .into_iter()
            .filter(|&j| j != k && !self.dead[j])
            .collect();
        self.dead[k] = true;
        self.live -= 1;
        self.touched.clear();
        self.touched.extend(col_k.iter().map(|&(i, _)| i));
        self.touched.extend_from_slice(&row_k);

        let mut row = Vec::with_capacity(row_k.len());
        let mut merged = Vec::new();
        for &j in &row_k {
            let col_j = std::mem::take(&mut self.cols[j]);
            merged.clear();
            merged.reserve(col_j.len() + col_k.len());
            let mut a_kj = 0.0;
            let (mut p, mut q) = (0, 0);
            // locate a_kj first so the merge can scale as it goes
            if let Ok(at) = col_j.binary_search_by_key(&k, |&(i, _)| i) {
                a_kj = col_j[at].1;
            }
            let factor = a_kj / denom;
            while p < col_j.len() || q < col_k.len() {
                let ip = col_j.get(p).map_or(usize::MAX, |e| e.0);
                let iq = col_k.get(q).map_or(usize::MAX, |e| e.0);
                if ip < iq {
                    if ip != k {
                        merged.push(col_j[p]);
                    }
                    p += 1;
                } else if iq < ip {
                    merged.push((iq, col_k[q].1 * factor));
                    self.rows[iq].push(j);
                    if iq != j {
                        self.in_deg[j] += 1;
                        self.out_deg[iq] += 1;
                    }
                    q += 1;
                } else {
                    merged.push((ip, col_j[p].1 + col_k[q].1 * factor));
                    p += 1;
                    q += 1;
                }
            }
            self.nnz = self.nnz + merged.len() - col_j.len();
            self.cols[j] = std::mem::replace(&mut merged, col_j);
            self.in_deg[j] -= 1;
            row.push((j, a_kj));
        }
        for &(i, _) in &col_k {
            self.out_deg[i] -= 1;
        }
        EliminationStep { vertex: k, denom, row }
    }
}

/// Pivots eliminated together before their joint update is applied.
const PANEL: usize = 32;

/// Dense finish of a sequential reduction over the live vertices of a
/// [`WorkMatrix`].
///
/// Pivots are taken in panels. Within a panel each pivot's column and row
/// are brought up to date from the earlier pivots of the panel, then the
/// rest of the matrix receives the whole panel as one product
/// `C U` with `C_t = col_t / denom_t` and `U_t = row_t`. Every term is a
/// sum of non-negative products.
struct DenseWork {
    /// Original index of each local vertex.
    ids: Vec<usize>,
    /// Local position of each original vertex, `usize::MAX` when gone.
    local: Vec<usize>,
    a: DMatrix<f64>,
}

impl DenseWork {
    fn from_sparse(w: &WorkMatrix) -> Self {
        let n = w.dead.len();
        let ids: Vec<usize> = (0..n).filter(|&v| !w.dead[v]).collect();
        let m = ids.len();
        let mut local = vec![usize::MAX; n];
        for (p, &v) in ids.iter().enumerate() {
            local[v] = p;
        }
        let mut a = DMatrix::zeros(m, m);
        for (b, &j) in ids.iter().enumerate() {
            for &(i, v) in &w.cols[j] {
                a[(local[i], b)] = v;
            }
        }
        Self { ids, local, a }
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        self.a[(self.local[i], self.local[j])]
    }

    /// Eliminates `order`, postponing non-viable vertices unless `strict`.
    fn eliminate_all(
        &mut self,
        order: &[usize],
        delta: f64,
        strict: bool,
        steps: &mut Vec<EliminationStep>,
    ) -> Result<()> {
        let mut queue: VecDeque<usize> = order.iter().copied().collect();
        let mut misses = 0;
        while !queue.is_empty() {
            let m = self.a.nrows();
            let mut panel: Vec<usize> = Vec::with_capacity(PANEL);
            let mut cs: Vec<Vec<f64>> = Vec::with_capacity(PANEL);
            let mut us: Vec<Vec<f64>> = Vec::with_capacity(PANEL);
            while panel.len() < PANEL {
                let Some(v) = queue.pop_front() else { break };
                let p = self.local[v];
                let mut col = self.a.column(p).as_slice().to_vec();
                for (c, u) in cs.iter().zip(&us) {
                    axpy(&mut col, u[p], c);
                }
                col[p] = 0.0;
                for &q in &panel {
                    col[q] = 0.0;
                }
                let denom: f64 = col.iter().sum();
                if denom <= delta {
                    if strict {
                        return Err(Error::AbsorbingPivot(v + 1));
                    }
                    queue.push_back(v);
                    misses += 1;
                    if misses >= queue.len() {
                        return Err(Error::NoViablePivot { remaining: queue.len() });
                    }
                    continue;
                }
                misses = 0;

                let mut row: Vec<f64> = (0..m).map(|j| self.a[(p, j)]).collect();
                for (c, u) in cs.iter().zip(&us) {
                    axpy(&mut row, c[p], u);
                }
                row[p] = 0.0;
                for &q in &panel {
                    row[q] = 0.0;
                }
                steps.push(EliminationStep {
                    vertex: v,
                    denom,
                    row: row
                        .iter()
                        .enumerate()
                        .filter(|&(_, &x)| x != 0.0)
                        .map(|(j, &x)| (self.ids[j], x))
                        .collect(),
                });
                col.iter_mut().for_each(|x| *x /= denom);
                panel.push(p);
                cs.push(col);
                us.push(row);
            }
            if panel.is_empty() {
                break;
            }
            self.apply_panel(&panel, &cs, &us);
        }
        Ok(())
    }

    /// Drops the panel vertices and adds `C U` to what remains.
    fn apply_panel(&mut self, panel: &[usize], cs: &[Vec<f64>], us: &[Vec<f64>]) {
        let m = self.a.nrows();
        let mut gone = vec![false; m];
        for &p in panel {
            gone[p] = true;
            self.local[self.ids[p]] = usize::MAX;
        }
        let rest: Vec<usize> = (0..m).filter(|&p| !gone[p]).collect();
        let t = rest.len();
        let b = panel.len();
        let mut next = DMatrix::zeros(t, t);
        for (dst, &j) in next.as_mut_slice().chunks_exact_mut(t).zip(&rest) {
            let src = &self.a.as_slice()[j * m..(j + 1) * m];
            for (x, &i) in dst.iter_mut().zip(&rest) {
                *x = src[i];
            }
        }
        let mut c = DMatrix::zeros(t, b);
        for (dst, col) in c.as_mut_slice().chunks_exact_mut(t).zip(cs) {
            for (x, &i) in dst.iter_mut().zip(&rest) {
                *x = col[i];
            }
        }
        let u = DMatrix::from_fn(b, t, |s, j| us[s][rest[j]]);
        next.gemm(1.0, &c, &u, 1.0);
        self.ids = rest.iter().map(|&p| self.ids[p]).collect();
        for (p, &v) in self.ids.iter().enumerate() {
            self.local[v] = p;
        }
        self.a = next;
    }
}

fn axpy(y: &mut [f64], f: f64, x: &[f64]) {
    if f != 0.0 {
        for (y, &x) in y.iter_mut().zip(x) {
            *y += f * x;
        }
    }
}

/// Chooses the kept set.
pub fn select_subset(a: &StochasticMatrix, strategy: &SelectionStrategy) -> Result<IndexSet> {
    let n = a.n();
    strategy.validate(n)?;
    match *strategy {
        SelectionStrategy::FirstS(s) => IndexSet::leading(n, s),
        SelectionStrategy::RandomS { s, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            IndexSet::new(n, sample(&mut rng, n, s).into_vec())
        }
        SelectionStrategy::PivotGreedy { s, delta } => {
            let mut work = WorkMatrix::new(a);
            let mut alive: Vec<usize> = (0..n).collect();
            while alive.len() > s {
                // largest 1 - a_kk first, i.e. smallest current diagonal
                let k = alive
                    .iter()
                    .copied()
                    .filter(|&k| work.denom(k) > delta)
                    .max_by(|&x, &y| work.denom(x).total_cmp(&work.denom(y)).then(y.cmp(&x)));
                let Some(k) = k else { break };
                work.eliminate(k);
                alive.retain(|&v| v != k);
            }
            // may exceed s when every remaining vertex is (nearly) absorbing
            IndexSet::new(n, alive)
        }
    }
}

/// Rebuilds the stationary vector of `A` from one of `R`: `v_S = v_R`,
/// `v_S' = lift v_R`, renormalized onto the simplex, original vertex order.
pub fn reconstruct_stationary(rec: &ReductionRecord, v_r: &ProbabilityVector) -> Result<ProbabilityVector> {
    if v_r.len() != rec.kept.len() {
        return Err(Error::DimensionMismatch {
            expected: rec.kept.len(),
            found: v_r.len(),
        });
    }
    let v = rec.lift_vector(v_r.as_slice());
    ProbabilityVector::from_weights(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionMode {
    Block,
    Sequential,
}

/// Operation count of a reduction from `n` to `s` vertices:
/// block `(n-s)^3 + (n-s)^2 s + s^2 (n-s) + s^2`,
/// sequential `((n+1) n (n-1) - (s+1) s (s-1)) / 3`.
pub fn reduction_cost(n: u64, s: u64, mode: ReductionMode) -> u64 {
    assert!(s >= 1 && s <= n, "kept size must lie in 1..=n");
    let c = n - s;
    match mode {
        ReductionMode::Block => c * c * c + c * c * s + s * s * c + s * s,
        ReductionMode::Sequential => ((n + 1) * n * (n - 1) - (s + 1) * s * (s - 1)) / 3,
    }
}

/// Reduction through either route.
pub fn reduce(a: &StochasticMatrix, kept: &IndexSet, mode: ReductionMode) -> Result<ReductionRecord> {
    match mode {
        ReductionMode::Block => reduce_block(a, kept),
        ReductionMode::Sequential => reduce_sequential(a, kept),
    }
}
