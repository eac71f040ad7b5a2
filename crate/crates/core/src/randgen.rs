//! Random instances and constructive example families.
//!
//! Every generator is a pure function of its parameters and seed, and
//! every stochastic output is re-projected onto exact column sums.

use nalgebra::DMatrix;
use rand::distr::{Distribution, Open01, Uniform};
use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{project_columns, IndexSet, NonNegativeMatrix, StochasticMatrix};

pub type GenRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Burr law with CDF `F(x) = 1 - 1 / (1 + x^alpha)` on `x > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BurrConfig {
    alpha: f64,
}

impl BurrConfig {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::PreconditionViolation(format!(
                "Burr exponent {alpha} must lie in (0, 1)"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        1.0 - 1.0 / (1.0 + x.powf(self.alpha))
    }

    /// `F^{-1}(u) = (u / (1 - u))^{1/alpha}`.
    pub fn inverse_cdf(&self, u: f64) -> f64 {
        (u / (1.0 - u)).powf(1.0 / self.alpha)
    }
}

impl Distribution<f64> for BurrConfig {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.sample(Open01);
        self.inverse_cdf(u)
    }
}

pub fn burr_sample<R: Rng + ?Sized>(cfg: &BurrConfig, rng: &mut R) -> f64 {
    cfg.sample(rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SparseGenConfig {
    pub n: usize,
    pub nnz_per_col: usize,
    pub burr: BurrConfig,
    pub seed: u64,
}

/// `nnz_per_col` distinct uniformly chosen rows per column, Burr values,
/// then column normalization. Sparse storage.
pub fn gen_sparse_stochastic(cfg: &SparseGenConfig) -> Result<StochasticMatrix> {
    let n = cfg.n;
    if n == 0 || cfg.nnz_per_col == 0 || cfg.nnz_per_col > n {
        return Err(Error::PreconditionViolation(format!(
            "need 1 <= nnz per column ({}) <= n ({n})",
            cfg.nnz_per_col
        )));
    }
    let mut rng = rng_from_seed(cfg.seed);
    let mut triplets = Vec::with_capacity(n * cfg.nnz_per_col);
    for j in 0..n {
        for i in sample(&mut rng, n, cfg.nnz_per_col) {
            triplets.push((i, j, cfg.burr.sample(&mut rng)));
        }
    }
    project_columns(NonNegativeMatrix::from_triplets(n, triplets)?)
}

/// Which two-block family to build; the optional weights are the free
/// parameters `L_k`, defaulting to the row means of `B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TwoBlockVariant {
    Padded,
    LWeighted(Option<Vec<f64>>),
    SingleRow(Option<Vec<f64>>),
}

/// A column-stochastic matrix whose reduction onto the `B` block is `q B`
/// plus `p` times a matrix with identical columns (`q = 1 - p`).
///
/// The eliminated block sits first (two vertices, one for `SingleRow`),
/// the `m` vertices of `B` after it. Returns the matrix and the `B`
/// vertices. `Padded` accepts `p = 1`, where `B` drops out entirely.
pub fn make_two_block(
    a: f64,
    p: f64,
    b: &StochasticMatrix,
    variant: &TwoBlockVariant,
) -> Result<(StochasticMatrix, IndexSet)> {
    if !(a > 0.0 && a < 0.5) {
        return Err(Error::PreconditionViolation(format!("a = {a} must lie in (0, 1/2)")));
    }
    let p_ok = match variant {
        TwoBlockVariant::Padded => p > 0.0 && p <= 1.0,
        _ => p > 0.0 && p < 1.0,
    };
    if !p_ok {
        return Err(Error::PreconditionViolation(format!("p = {p} is out of range")));
    }
    let q = 1.0 - p;
    let m = b.n();
    let bd = b.to_dense();
    let weights = |given: &Option<Vec<f64>>| -> Result<Vec<f64>> {
        let l = match given {
            Some(w) => {
                if w.len() != m {
                    return Err(Error::DimensionMismatch {
                        expected: m,
                        found: w.len(),
                    });
                }
                if (w.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
                    return Err(Error::PreconditionViolation("weights L must sum to 1".into()));
                }
                w.clone()
            }
            None => (0..m).map(|i| bd.row(i).sum() / m as f64).collect(),
        };
        if let Some(k) = l.iter().position(|&lk| !(lk - a / m as f64 > 0.0)) {
            return Err(Error::PreconditionViolation(format!(
                "L_{} - a/m must be positive",
                k + 1
            )));
        }
        Ok(l)
    };

    let head = if matches!(variant, TwoBlockVariant::SingleRow(_)) {
        1
    } else {
        2
    };
    let n = head + m;
    let mut out = DMatrix::zeros(n, n);
    for j in 0..m {
        out[(0, head + j)] = p;
        for i in 0..m {
            out[(head + i, head + j)] = q * bd[(i, j)];
        }
    }
    match variant {
        TwoBlockVariant::Padded => {
            fill_a_block(&mut out, a);
            for i in 0..m {
                out[(2 + i, 0)] = (1.0 - 2.0 * a) / m as f64;
            }
            out[(2, 1)] = 1.0 - 2.0 * a;
        }
        TwoBlockVariant::LWeighted(given) => {
            let l = weights(given)?;
            fill_a_block(&mut out, a);
            for i in 0..m {
                out[(2 + i, 0)] = (1.0 - 2.0 * a) / (1.0 - a) * (l[i] - a / m as f64);
                out[(2 + i, 1)] = (1.0 - 2.0 * a) / m as f64;
            }
        }
        TwoBlockVariant::SingleRow(given) => {
            let l = weights(given)?;
            out[(0, 0)] = a;
            for i in 0..m {
                out[(1 + i, 0)] = l[i] - a / m as f64;
            }
        }
    }
    let kept = IndexSet::new(n, (head..n).collect())?;
    Ok((project_columns(NonNegativeMatrix::from_dense(out)?)?, kept))
}

fn fill_a_block(out: &mut DMatrix<f64>, a: f64) {
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = a;
        }
    }
}

/// `a_ik > 0` exactly when `|i - k| <= m - 1`, with weights `1 / (1 + |i - k|)`.
pub fn make_banded(n: usize, m: usize) -> Result<StochasticMatrix> {
    if n == 0 || m == 0 || m > n {
        return Err(Error::PreconditionViolation(format!(
            "half-bandwidth {m} must lie in 1..={n}"
        )));
    }
    let d = DMatrix::from_fn(n, n, |i, k| {
        let dist = i.abs_diff(k);
        if dist < m {
            1.0 / (1.0 + dist as f64)
        } else {
            0.0
        }
    });
    project_columns(NonNegativeMatrix::from_dense(d)?)
}

/// `16 e^{-cn/2} + 3 n e^{-cn} <= 1`.
pub fn near_averaging_bound_holds(n: usize, c: f64) -> bool {
    let nf = n as f64;
    16.0 * (-c * nf / 2.0).exp() + 3.0 * nf * (-c * nf).exp() <= 1.0
}

/// `d_c(n) = 1/n + e^{-cn}`.
pub fn near_averaging_bound(n: usize, c: f64) -> f64 {
    1.0 / n as f64 + (-c * n as f64).exp()
}

/// Averaging matrix with entries raised by uniform amounts in `[0, e^{-cn}]`
/// and re-normalized, so every entry stays at most `d_c(n)`. `n` must be a
/// multiple of 4 so that three quarters of the vertices can be eliminated.
pub fn make_near_averaging(n: usize, c: f64, seed: u64) -> Result<StochasticMatrix> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::PreconditionViolation(format!(
            "n = {n} must be a positive multiple of 4"
        )));
    }
    if !(c > 0.0) || !near_averaging_bound_holds(n, c) {
        return Err(Error::PreconditionViolation(format!(
            "n = {n} is too small for decay rate c = {c}"
        )));
    }
    let eps = (-c * n as f64).exp();
    let mut rng = rng_from_seed(seed);
    let d = DMatrix::from_fn(n, n, |_, _| 1.0 / n as f64 + eps * rng.random::<f64>());
    project_columns(NonNegativeMatrix::from_dense(d)?)
}

/// Dense random stochastic matrix. Each entry is kept with probability
/// `density`, and every column keeps at least one entry. Values are
/// uniform on `[0.05, 1)` before normalization.
pub fn random_stochastic(n: usize, density: f64, rng: &mut GenRng) -> Result<StochasticMatrix> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let vals = Uniform::new(0.05, 1.0).expect("valid range");
    let mut d = DMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            if rng.random::<f64>() < density {
                d[(i, j)] = vals.sample(rng);
            }
        }
        if d.column(j).iter().all(|&v| v == 0.0) {
            let i = rng.random_range(0..n);
            d[(i, j)] = vals.sample(rng);
        }
    }
    project_columns(NonNegativeMatrix::from_dense(d)?)
}

/// Positive symmetric matrix balanced by Sinkhorn scaling. Rows sum to 1
/// within `1e-13`; columns are exact.
pub fn random_doubly_stochastic(n: usize, rng: &mut GenRng) -> Result<StochasticMatrix> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let vals = Uniform::new(0.05, 1.0).expect("valid range");
    let raw = DMatrix::from_fn(n, n, |_, _| vals.sample(rng));
    let mut d = &raw + raw.transpose();
    for _ in 0..10_000 {
        for i in 0..n {
            let s = d.row(i).sum();
            d.row_mut(i).iter_mut().for_each(|v| *v /= s);
        }
        for j in 0..n {
            let s = d.column(j).sum();
            d.column_mut(j).iter_mut().for_each(|v| *v /= s);
        }
        let worst = (0..n).map(|i| (d.row(i).sum() - 1.0f64).abs()).fold(0.0, f64::max);
        if worst < 1e-14 {
            break;
        }
    }
    project_columns(NonNegativeMatrix::from_dense(d)?)
}

/// Non-negative irreducible matrix with at most one zero per row and per
/// column, a positive row `m` and the smallest column sum at `m`; returns
/// the matrix and `m`.
pub fn irreducible_positive_row(n: usize, rng: &mut GenRng) -> Result<(NonNegativeMatrix, usize)> {
    if n < 3 {
        return Err(Error::PreconditionViolation("need n >= 3".into()));
    }
    let vals = Uniform::new(0.1, 1.0).expect("valid range");
    let m = rng.random_range(0..n);
    let mut d = DMatrix::from_fn(n, n, |_, _| vals.sample(rng));
    // zeros along a random permutation, skipping row m
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    for (i, &j) in perm.iter().enumerate() {
        if i != m && rng.random::<f64>() < 0.7 {
            d[(i, j)] = 0.0;
        }
    }
    let min_other = (0..n)
        .filter(|&j| j != m)
        .map(|j| d.column(j).sum())
        .fold(f64::INFINITY, f64::min);
    let col_m = d.column(m).sum();
    if col_m >= min_other {
        let scale = 0.9 * min_other / col_m;
        d.column_mut(m).iter_mut().for_each(|v| *v *= scale);
    }
    Ok((NonNegativeMatrix::from_dense(d)?, m))
}

/// Stochastic matrix with no unit diagonal and at most `m` zeros per row
/// and column, with a kept set whose complement has `2m - 1` vertices.
pub fn bounded_zeros(n: usize, m: usize, rng: &mut GenRng) -> Result<(StochasticMatrix, IndexSet)> {
    if m == 0 || 2 * m > n {
        return Err(Error::PreconditionViolation(format!(
            "need 1 <= m and 2m <= n (m = {m}, n = {n})"
        )));
    }
    let vals = Uniform::new(0.05, 1.0).expect("valid range");
    let mut d = DMatrix::from_fn(n, n, |_, _| vals.sample(rng));
    // each permutation adds at most one zero per row and per column
    for _ in 0..m {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        for (i, &j) in perm.iter().enumerate() {
            if rng.random::<f64>() < 0.8 {
                d[(i, j)] = 0.0;
            }
        }
    }
    let a = project_columns(NonNegativeMatrix::from_dense(d)?)?;
    let eliminated = sample(rng, n, 2 * m - 1).into_vec();
    let kept: Vec<usize> = (0..n).filter(|i| !eliminated.contains(i)).collect();
    Ok((a, IndexSet::new(n, kept)?))
}

/// Stochastic matrix whose eliminated block (the first `k` vertices) is
/// positive with column sums below 1, and where every row of `A_SS'` and
/// every column of `A_S'S` has a positive entry; `A_SS` is sparse.
pub fn primitive_complement(n: usize, k: usize, rng: &mut GenRng) -> Result<(StochasticMatrix, IndexSet)> {
    if k == 0 || k >= n {
        return Err(Error::PreconditionViolation(format!(
            "need 1 <= k < n (k = {k}, n = {n})"
        )));
    }
    let vals = Uniform::new(0.05, 1.0).expect("valid range");
    let mut d = DMatrix::zeros(n, n);
    for i in 0..k {
        for j in 0..k {
            d[(i, j)] = vals.sample(rng);
        }
    }
    for i in k..n {
        let j = rng.random_range(0..k);
        d[(i, j)] = vals.sample(rng);
    }
    for j in k..n {
        let i = rng.random_range(0..k);
        d[(i, j)] = vals.sample(rng);
    }
    for j in 0..k {
        let i = rng.random_range(k..n);
        d[(i, j)] = vals.sample(rng);
    }
    for i in k..n {
        for j in k..n {
            if rng.random::<f64>() < 0.2 {
                d[(i, j)] = vals.sample(rng);
            }
        }
    }
    let a = project_columns(NonNegativeMatrix::from_dense(d)?)?;
    Ok((a, IndexSet::new(n, (k..n).collect())?))
}

/// Structural families with known criticality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainFamily {
    /// Irreducible with a self-loop: one aperiodic class.
    Primitive,
    /// Irreducible, vertices in `d >= 2` cyclically ordered groups.
    Periodic,
    /// Two or more closed classes plus transient vertices.
    MultiClass,
    /// One closed aperiodic class reached from transient vertices.
    TransientTail,
}

impl ChainFamily {
    pub const ALL: [ChainFamily; 4] = [
        ChainFamily::Primitive,
        ChainFamily::Periodic,
        ChainFamily::MultiClass,
        ChainFamily::TransientTail,
    ];

    pub fn is_non_critical(&self) -> bool {
        matches!(self, ChainFamily::Primitive | ChainFamily::TransientTail)
    }
}

/// Random chain of the given family on `n >= 4` vertices.
pub fn random_chain(family: ChainFamily, n: usize, rng: &mut GenRng) -> Result<StochasticMatrix> {
    if n < 4 {
        return Err(Error::PreconditionViolation("need n >= 4".into()));
    }
    let vals = Uniform::new(0.05, 1.0).expect("valid range");
    let mut d = DMatrix::zeros(n, n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    match family {
        ChainFamily::Primitive => {
            irreducible_block(&mut d, &order, rng);
            let v = order[rng.random_range(0..n)];
            d[(v, v)] = vals.sample(rng);
        }
        ChainFamily::Periodic => {
            let period = rng.random_range(2..=(n / 2).min(4));
            let groups: Vec<&[usize]> = (0..period)
                .map(|g| &order[g * n / period..(g + 1) * n / period])
                .collect();
            // a closed walk through every vertex, always stepping g -> g+1
            let rounds = groups.iter().map(|g| g.len()).max().unwrap_or(1);
            let walk: Vec<usize> = (0..rounds)
                .flat_map(|r| groups.iter().map(move |g| g[r % g.len()]))
                .collect();
            for w in 0..walk.len() {
                let (j, i) = (walk[w], walk[(w + 1) % walk.len()]);
                d[(i, j)] = vals.sample(rng);
            }
            for g in 0..period {
                for &j in groups[g] {
                    for &i in groups[(g + 1) % period] {
                        if rng.random::<f64>() < 0.3 {
                            d[(i, j)] = vals.sample(rng);
                        }
                    }
                }
            }
        }
        ChainFamily::MultiClass => {
            let transient = rng.random_range(0..=(n - 4).min(3));
            let rest = &order[transient..];
            let split = rest.len() / 2;
            let (c1, c2) = rest.split_at(split);
            for class in [c1, c2] {
                irreducible_block(&mut d, class, rng);
                let v = class[rng.random_range(0..class.len())];
                d[(v, v)] = vals.sample(rng);
            }
            for &t in &order[..transient] {
                for &target in [c1[0], c2[0]].iter() {
                    d[(target, t)] = vals.sample(rng);
                }
            }
        }
        ChainFamily::TransientTail => {
            let transient = rng.random_range(1..=n / 2);
            let class = &order[transient..];
            irreducible_block(&mut d, class, rng);
            let v = class[rng.random_range(0..class.len())];
            d[(v, v)] = vals.sample(rng);
            for (k, &t) in order[..transient].iter().enumerate() {
                // leak into the class, plus forward links among transients
                d[(class[rng.random_range(0..class.len())], t)] = vals.sample(rng);
                if k + 1 < transient && rng.random::<f64>() < 0.5 {
                    d[(order[k + 1], t)] = vals.sample(rng);
                }
            }
        }
    }
    project_columns(NonNegativeMatrix::from_dense(d)?)
}

/// Cycle through `members` plus random chords, making them one class.
fn irreducible_block(d: &mut DMatrix<f64>, members: &[usize], rng: &mut GenRng) {
    let vals = Uniform::new(0.05, 1.0).expect("valid range");
    let k = members.len();
    for idx in 0..k {
        let j = members[idx];
        let i = members[(idx + 1) % k];
        d[(i, j)] = vals.sample(rng);
        for &i2 in members {
            if i2 != j && rng.random::<f64>() < 0.3 {
                d[(i2, j)] = vals.sample(rng);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::reduce_block;
    use crate::spectral::{classify, diameter_tau, eigenvalues, inner_spectral_radius, is_non_critical};

    #[test]
    fn burr_inverse_cdf_examples() {
        for alpha in [0.2, 0.5, 0.8] {
            let b = BurrConfig::new(alpha).unwrap();
            assert_eq!(b.inverse_cdf(0.5), 1.0);
            assert!((b.cdf(b.inverse_cdf(0.3)) - 0.3).abs() < 1e-12);
        }
        let b = BurrConfig::new(0.2).unwrap();
        let x = b.inverse_cdf(0.9);
        assert!((x - 59049.0).abs() < 1e-6 * 59049.0, "{x}");
        assert!(BurrConfig::new(1.0).is_err());
        assert!(BurrConfig::new(0.0).is_err());
    }

    #[test]
    fn sparse_generator_shape() {
        let cfg = SparseGenConfig {
            n: 50,
            nnz_per_col: 4,
            burr: BurrConfig::new(0.2).unwrap(),
            seed: 11,
        };
        let a = gen_sparse_stochastic(&cfg).unwrap();
        assert!(a.is_sparse());
        for j in 0..50 {
            assert_eq!(a.column_entries(j).len(), 4);
        }
        assert_eq!(a.to_dense(), gen_sparse_stochastic(&cfg).unwrap().to_dense());

        let two = gen_sparse_stochastic(&SparseGenConfig {
            n: 2,
            nnz_per_col: 2,
            ..cfg
        })
        .unwrap();
        assert!(two.to_dense().iter().all(|&v| v > 0.0));
        assert!(gen_sparse_stochastic(&SparseGenConfig { nnz_per_col: 51, ..cfg }).is_err());
    }

    #[test]
    fn padded_case_spectrum() {
        for a in [0.1, 0.25, 0.4] {
            let (m, kept) = make_two_block(a, 1.0, &StochasticMatrix::identity(1), &TwoBlockVariant::Padded).unwrap();
            let expect = DMatrix::from_row_slice(3, 3, &[a, a, 1.0, a, a, 0.0, 1.0 - 2.0 * a, 1.0 - 2.0 * a, 0.0]);
            assert!((m.to_dense() - &expect).amax() < 1e-15);
            assert_eq!(kept.as_slice(), &[2]);
            let mut ev: Vec<f64> = eigenvalues(&m.to_dense()).unwrap().iter().map(|z| z.re).collect();
            ev.sort_by(f64::total_cmp);
            let mut want = [2.0 * a - 1.0, 0.0, 1.0];
            want.sort_by(f64::total_cmp);
            for (x, y) in ev.iter().zip(want) {
                assert!((x - y).abs() < 1e-9, "{ev:?}");
            }
        }
    }

    #[test]
    fn two_block_reductions() {
        let b =
            StochasticMatrix::from_rows(&[vec![0.2, 0.5, 0.1], vec![0.3, 0.25, 0.6], vec![0.5, 0.25, 0.3]]).unwrap();
        let (a, p, m) = (0.2, 0.3, 3.0);
        let q = 1.0 - p;
        let bd = b.to_dense();
        let l: Vec<f64> = (0..3).map(|i| bd.row(i).sum() / m).collect();
        for variant in [
            TwoBlockVariant::Padded,
            TwoBlockVariant::LWeighted(None),
            TwoBlockVariant::SingleRow(None),
        ] {
            let (big, kept) = make_two_block(a, p, &b, &variant).unwrap();
            let r = reduce_block(&big, &kept).unwrap().reduced;
            let col = |i: usize| match &variant {
                TwoBlockVariant::Padded => (1.0 - a) / m + if i == 0 { a } else { 0.0 },
                TwoBlockVariant::LWeighted(_) => l[i],
                TwoBlockVariant::SingleRow(_) => (l[i] - a / m) / (1.0 - a),
            };
            let expect = DMatrix::from_fn(3, 3, |i, j| q * bd[(i, j)] + p * col(i));
            assert!((r.to_dense() - expect).amax() < 1e-12, "{variant:?}");
            assert!((diameter_tau(&r) - q * diameter_tau(&b)).abs() < 1e-12);
        }
        let google = TwoBlockVariant::LWeighted(Some(vec![1.0 / 3.0; 3]));
        let (big, kept) = make_two_block(a, p, &b, &google).unwrap();
        let r = reduce_block(&big, &kept).unwrap().reduced;
        let expect = bd.map(|v| q * v + (1.0 - q) / m);
        assert!((r.to_dense() - expect).amax() < 1e-12);

        assert!(make_two_block(0.6, p, &b, &TwoBlockVariant::Padded).is_err());
        assert!(make_two_block(a, 1.0, &b, &TwoBlockVariant::SingleRow(None)).is_err());
        let bad = TwoBlockVariant::LWeighted(Some(vec![0.9, 0.05, 0.05]));
        assert!(make_two_block(a, p, &b, &bad).is_err());
    }

    #[test]
    fn banded_pattern_and_positive_reduction() {
        let a = make_banded(6, 2).unwrap();
        for i in 0..6 {
            for k in 0..6 {
                assert_eq!(a.get(i, k) > 0.0, i.abs_diff(k) <= 1, "({i}, {k})");
            }
        }
        let r = reduce_block(&make_banded(8, 3).unwrap(), &IndexSet::leading(8, 3).unwrap()).unwrap();
        assert!(r.reduced.to_dense().iter().all(|&v| v > 0.0));
        assert!(make_banded(5, 5).unwrap().to_dense().iter().all(|&v| v > 0.0));
        assert!(make_banded(5, 6).is_err());
    }

    #[test]
    fn near_averaging_family() {
        assert!(near_averaging_bound_holds(40, 1.0));
        assert!(!near_averaging_bound_holds(4, 0.1));
        let a = make_near_averaging(40, 1.0, 3).unwrap();
        let bound = near_averaging_bound(40, 1.0);
        assert!(a.to_dense().iter().all(|&v| v <= bound));
        assert!(make_near_averaging(42, 1.0, 3).is_err());
        assert!(make_near_averaging(8, 0.1, 3).is_err());

        let avg = StochasticMatrix::averaging(8);
        let r = reduce_block(&avg, &IndexSet::leading(8, 2).unwrap()).unwrap();
        assert!((r.reduced.to_dense() - StochasticMatrix::averaging(2).to_dense()).amax() < 1e-15);
    }

    #[test]
    fn doubly_stochastic_rows_balance() {
        let mut rng = rng_from_seed(5);
        let a = random_doubly_stochastic(12, &mut rng).unwrap().to_dense();
        for i in 0..12 {
            assert!((a.row(i).sum() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn hypothesis_generators() {
        let mut rng = rng_from_seed(8);
        let (a, m) = irreducible_positive_row(7, &mut rng).unwrap();
        let d = a.to_dense();
        assert!(d.row(m).iter().all(|&v| v > 0.0));
        for k in 0..7 {
            assert!(d.row(k).iter().filter(|&&v| v == 0.0).count() <= 1);
            assert!(d.column(k).iter().filter(|&&v| v == 0.0).count() <= 1);
            assert!(d.column(k).sum() >= d.column(m).sum());
        }

        let (a, kept) = bounded_zeros(10, 2, &mut rng).unwrap();
        assert_eq!(kept.len(), 7);
        let d = a.to_dense();
        for k in 0..10 {
            assert!(d.row(k).iter().filter(|&&v| v == 0.0).count() <= 2);
            assert!(d[(k, k)] < 1.0);
        }

        let (a, kept) = primitive_complement(9, 4, &mut rng).unwrap();
        assert_eq!(kept.as_slice(), &[4, 5, 6, 7, 8]);
        let d = a.to_dense();
        for j in 0..4 {
            assert!((0..4).map(|i| d[(i, j)]).sum::<f64>() < 1.0);
        }
    }

    #[test]
    fn chain_families_have_expected_structure() {
        let mut rng = rng_from_seed(21);
        for family in ChainFamily::ALL {
            for n in [4, 7, 12] {
                let a = random_chain(family, n, &mut rng).unwrap();
                assert_eq!(is_non_critical(&a), family.is_non_critical(), "{family:?} n={n}");
                let dec = classify(&a);
                match family {
                    ChainFamily::Periodic => assert!(dec.periods[0] >= 2),
                    ChainFamily::MultiClass => assert!(dec.num_essential() >= 2),
                    _ => assert_eq!(dec.num_essential(), 1),
                }
                let rho = inner_spectral_radius(&a).unwrap();
                assert_eq!(rho < 1.0 - 1e-9, family.is_non_critical(), "{family:?} rho={rho}");
            }
        }
    }
}
