#![allow(dead_code)]

use isored::randgen::{rng_from_seed, GenRng};
use isored::{project_columns, IndexSet, NonNegativeMatrix, StochasticMatrix};
use nalgebra::DMatrix;
use rand::seq::index::sample;
use rand::Rng;

/// Random column-stochastic matrix; each entry is zero with probability
/// `zeros`, every column keeps at least one positive entry.
pub fn stochastic(n: usize, zeros: f64, rng: &mut GenRng) -> StochasticMatrix {
    let mut d = DMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            if rng.random::<f64>() >= zeros {
                d[(i, j)] = rng.random_range(0.01..1.0);
            }
        }
        if d.column(j).iter().all(|&v| v == 0.0) {
            d[(rng.random_range(0..n), j)] = 1.0;
        }
    }
    project_columns(NonNegativeMatrix::from_dense(d).unwrap()).unwrap()
}

pub fn positive(n: usize, rng: &mut GenRng) -> StochasticMatrix {
    stochastic(n, 0.0, rng)
}

/// Uniform kept set of size in `1..n`.
pub fn kept_set(n: usize, rng: &mut GenRng) -> IndexSet {
    let s = rng.random_range(1..n);
    IndexSet::new(n, sample(rng, n, s).into_vec()).unwrap()
}

pub fn seeded(seed: u64) -> GenRng {
    rng_from_seed(seed)
}

/// `A_SS + A_SS' (I - A_S'S')^{-1} A_S'S` through nalgebra's own inverse.
pub fn schur_oracle(a: &DMatrix<f64>, kept: &IndexSet) -> DMatrix<f64> {
    let s = kept.as_slice();
    let c = kept.complement();
    let pick = |rows: &[usize], cols: &[usize]| DMatrix::from_fn(rows.len(), cols.len(), |i, j| a[(rows[i], cols[j])]);
    let inv = (DMatrix::identity(c.len(), c.len()) - pick(&c, &c))
        .try_inverse()
        .expect("invertible eliminated block");
    pick(s, s) + pick(s, &c) * inv * pick(&c, s)
}

/// Stationary vector of a dense chain by nalgebra's LU with the last
/// equation replaced by the normalization.
pub fn stationary_oracle(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let mut m = a - DMatrix::identity(n, n);
    m.row_mut(n - 1).fill(1.0);
    let mut b = nalgebra::DVector::zeros(n);
    b[n - 1] = 1.0;
    m.lu().solve(&b).expect("unique stationary vector").as_slice().to_vec()
}

pub fn max_abs_diff(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}
