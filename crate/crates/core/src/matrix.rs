//! Matrix and vector value types shared by every other module.
//!
//! All matrices are square and follow the column-stochastic convention:
//! entry `a[(i, j)]` is the probability of moving from state `j` to state
//! `i`, so columns are probability distributions. Indices are 0-based in
//! the API and 1-based in error values and files.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Tolerance on column sums and vector sums.
pub const STOCHASTIC_TOL: f64 = 1e-12;

/// Below this fill ratio a matrix is stored column-compressed.
pub const SPARSE_DENSITY: f64 = 0.05;

/// Square column-compressed matrix. Row indices within a column are sorted
/// and unique; explicit zeros are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct CscMatrix {
    n: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CscMatrix {
    /// Builds from 0-based `(row, col, value)` triples, summing duplicates
    /// and dropping zeros.
    pub fn from_triplets<I>(n: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for (i, j, v) in triplets {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i + 1, n });
            }
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j + 1, n });
            }
            cols[j].push((i, v));
        }
        let mut col_ptr = Vec::with_capacity(n + 1);
        let mut row_idx = Vec::new();
        let mut values = Vec::new();
        col_ptr.push(0);
        for mut col in cols {
            col.sort_by_key(|&(i, _)| i);
            let mut k = 0;
            while k < col.len() {
                let i = col[k].0;
                let mut v = 0.0;
                while k < col.len() && col[k].0 == i {
                    v += col[k].1;
                    k += 1;
                }
                if v != 0.0 {
                    row_idx.push(i);
                    values.push(v);
                }
            }
            col_ptr.push(row_idx.len());
        }
        Ok(Self {
            n,
            col_ptr,
            row_idx,
            values,
        })
    }

    pub fn from_dense(m: &DMatrix<f64>) -> Self {
        let n = m.nrows();
        let mut col_ptr = vec![0];
        let mut row_idx = Vec::new();
        let mut values = Vec::new();
        for j in 0..m.ncols() {
            for i in 0..n {
                let v = m[(i, j)];
                if v != 0.0 {
                    row_idx.push(i);
                    values.push(v);
                }
            }
            col_ptr.push(row_idx.len());
        }
        Self {
            n,
            col_ptr,
            row_idx,
            values,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Row indices and values of column `j`.
    pub fn column(&self, j: usize) -> (&[usize], &[f64]) {
        let r = self.col_ptr[j]..self.col_ptr[j + 1];
        (&self.row_idx[r.clone()], &self.values[r])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (rows, vals) = self.column(j);
        match rows.binary_search(&i) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for j in 0..self.n {
            let (rows, vals) = self.column(j);
            for (&i, &v) in rows.iter().zip(vals) {
                m[(i, j)] = v;
            }
        }
        m
    }

    fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }
}

/// Backing store of a square matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum Storage {
    Dense(DMatrix<f64>),
    Sparse(CscMatrix),
}

impl Storage {
    pub fn n(&self) -> usize {
        match self {
            Storage::Dense(m) => m.nrows(),
            Storage::Sparse(m) => m.n(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match self {
            Storage::Dense(m) => m[(i, j)],
            Storage::Sparse(m) => m.get(i, j),
        }
    }

    /// Non-zero entries of column `j` as `(row, value)`.
    pub fn column_entries(&self, j: usize) -> Vec<(usize, f64)> {
        match self {
            Storage::Dense(m) => m
                .column(j)
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0.0)
                .map(|(i, &v)| (i, v))
                .collect(),
            Storage::Sparse(m) => {
                let (rows, vals) = m.column(j);
                rows.iter().copied().zip(vals.iter().copied()).collect()
            }
        }
    }

    pub fn nnz(&self) -> usize {
        match self {
            Storage::Dense(m) => m.iter().filter(|&&v| v != 0.0).count(),
            Storage::Sparse(m) => m.nnz(),
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        match self {
            Storage::Dense(m) => m.clone(),
            Storage::Sparse(m) => m.to_dense(),
        }
    }

    /// `y = M x`.
    pub fn mul_vec_into(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        match self {
            Storage::Dense(m) => {
                for (j, &xj) in x.iter().enumerate() {
                    if xj == 0.0 {
                        continue;
                    }
                    for (yi, &a) in y.iter_mut().zip(m.column(j).iter()) {
                        *yi += a * xj;
                    }
                }
            }
            Storage::Sparse(m) => {
                for (j, &xj) in x.iter().enumerate() {
                    let (rows, vals) = m.column(j);
                    for (&i, &a) in rows.iter().zip(vals) {
                        y[i] += a * xj;
                    }
                }
            }
        }
    }

    fn column_sum(&self, j: usize) -> f64 {
        match self {
            Storage::Dense(m) => m.column(j).iter().sum(),
            Storage::Sparse(m) => m.column(j).1.iter().sum(),
        }
    }

    fn scale_columns(&mut self, factors: &[f64]) {
        match self {
            Storage::Dense(m) => {
                for (j, &f) in factors.iter().enumerate() {
                    m.column_mut(j).iter_mut().for_each(|v| *v *= f);
                }
            }
            Storage::Sparse(m) => {
                let ptr = m.col_ptr.clone();
                let vals = m.values_mut();
                for (j, &f) in factors.iter().enumerate() {
                    vals[ptr[j]..ptr[j + 1]].iter_mut().for_each(|v| *v *= f);
                }
            }
        }
    }

    /// Chooses sparse or dense storage from the fill ratio.
    fn auto(self) -> Self {
        let n = self.n();
        let density = if n == 0 {
            1.0
        } else {
            self.nnz() as f64 / (n * n) as f64
        };
        match self {
            Storage::Dense(m) if density < SPARSE_DENSITY => Storage::Sparse(CscMatrix::from_dense(&m)),
            Storage::Sparse(m) if density >= SPARSE_DENSITY => Storage::Dense(m.to_dense()),
            s => s,
        }
    }
}

/// Square matrix with non-negative finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct NonNegativeMatrix {
    storage: Storage,
}

impl NonNegativeMatrix {
    pub fn from_dense(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::EmptyInput);
        }
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                check_entry(i, j, m[(i, j)])?;
            }
        }
        Ok(Self {
            storage: Storage::Dense(m),
        })
    }

    /// Row-major nested slices, the layout matrices are usually written in.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::NotSquare { rows: n, cols: r.len() });
            }
        }
        let data: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::from_dense(DMatrix::from_row_slice(n, n, &data))
    }

    pub fn from_csc(m: CscMatrix) -> Result<Self> {
        if m.n() == 0 {
            return Err(Error::EmptyInput);
        }
        for j in 0..m.n() {
            let (rows, vals) = m.column(j);
            for (&i, &v) in rows.iter().zip(vals) {
                check_entry(i, j, v)?;
            }
        }
        Ok(Self {
            storage: Storage::Sparse(m),
        })
    }

    pub fn from_triplets<I>(n: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        Self::from_csc(CscMatrix::from_triplets(n, triplets)?)
    }

    /// Re-stores the matrix sparse or dense according to its fill ratio.
    pub fn with_auto_storage(self) -> Self {
        Self {
            storage: self.storage.auto(),
        }
    }

    pub fn n(&self) -> usize {
        self.storage.n()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.storage.get(i, j)
    }

    pub fn storage(&self) -> &Storage {
        &self.storage
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn nnz(&self) -> usize {
        self.storage.nnz()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        self.storage.to_dense()
    }

    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.n()).map(|j| self.storage.column_sum(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let storage = match &self.storage {
            Storage::Dense(m) => Storage::Dense(m.transpose()),
            Storage::Sparse(m) => {
                let mut t = Vec::with_capacity(m.nnz());
                for j in 0..m.n() {
                    let (rows, vals) = m.column(j);
                    t.extend(rows.iter().zip(vals).map(|(&i, &v)| (j, i, v)));
                }
                Storage::Sparse(CscMatrix::from_triplets(m.n(), t).expect("indices in range"))
            }
        };
        Self { storage }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<DMatrix<f64>> {
        let n = self.n();
        check_indices(rows, n)?;
        check_indices(cols, n)?;
        Ok(DMatrix::from_fn(rows.len(), cols.len(), |a, b| {
            self.get(rows[a], cols[b])
        }))
    }
}

fn check_entry(i: usize, j: usize, v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::NonFiniteEntry { row: i + 1, col: j + 1 });
    }
    if v < 0.0 {
        return Err(Error::NegativeEntry { row: i + 1, col: j + 1 });
    }
    Ok(())
}

fn check_indices(idx: &[usize], n: usize) -> Result<()> {
    match idx.iter().find(|&&i| i >= n) {
        Some(&i) => Err(Error::IndexOutOfRange { index: i + 1, n }),
        None => Ok(()),
    }
}

/// `M_RC` for a dense matrix: rows and columns taken in the given order.
pub fn submatrix(m: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> Result<DMatrix<f64>> {
    check_indices(rows, m.nrows())?;
    check_indices(cols, m.ncols())?;
    Ok(DMatrix::from_fn(rows.len(), cols.len(), |a, b| m[(rows[a], cols[b])]))
}

/// A non-negative square matrix whose columns each sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    inner: NonNegativeMatrix,
}

/// Checks the column-sum condition and wraps the matrix.
pub fn validate_stochastic(m: NonNegativeMatrix) -> Result<StochasticMatrix> {
    for (j, s) in m.column_sums().into_iter().enumerate() {
        if (s - 1.0).abs() > STOCHASTIC_TOL {
            return Err(Error::ColumnSumViolation { col: j + 1, sum: s });
        }
    }
    Ok(StochasticMatrix { inner: m })
}

/// Divides every column by its sum: `P_ij(M) = m_ij / sum_k m_kj`.
pub fn project_columns(m: NonNegativeMatrix) -> Result<StochasticMatrix> {
    let sums = m.column_sums();
    if let Some(j) = sums.iter().position(|&s| s <= 0.0) {
        return Err(Error::ZeroColumn(j + 1));
    }
    let factors: Vec<f64> = sums.iter().map(|s| 1.0 / s).collect();
    let mut storage = m.storage;
    storage.scale_columns(&factors);
    validate_stochastic(NonNegativeMatrix { storage })
}

impl StochasticMatrix {
    pub fn new(m: NonNegativeMatrix) -> Result<Self> {
        validate_stochastic(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        validate_stochastic(NonNegativeMatrix::from_rows(rows)?)
    }

    pub fn from_dense(m: DMatrix<f64>) -> Result<Self> {
        validate_stochastic(NonNegativeMatrix::from_dense(m)?)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: NonNegativeMatrix {
                storage: Storage::Dense(DMatrix::identity(n, n)),
            },
        }
    }

    /// The matrix with every entry equal to `1/n`.
    pub fn averaging(n: usize) -> Self {
        Self {
            inner: NonNegativeMatrix {
                storage: Storage::Dense(DMatrix::from_element(n, n, 1.0 / n as f64)),
            },
        }
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner.get(i, j)
    }

    pub fn storage(&self) -> &Storage {
        self.inner.storage()
    }

    pub fn as_non_negative(&self) -> &NonNegativeMatrix {
        &self.inner
    }

    pub fn into_non_negative(self) -> NonNegativeMatrix {
        self.inner
    }

    pub fn is_sparse(&self) -> bool {
        self.inner.is_sparse()
    }

    pub fn nnz(&self) -> usize {
        self.inner.nnz()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        self.inner.to_dense()
    }

    pub fn with_auto_storage(self) -> Self {
        Self {
            inner: self.inner.with_auto_storage(),
        }
    }

    pub fn column_entries(&self, j: usize) -> Vec<(usize, f64)> {
        self.inner.storage.column_entries(j)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<DMatrix<f64>> {
        self.inner.submatrix(rows, cols)
    }

    pub fn mul_vec_into(&self, x: &[f64], y: &mut [f64]) {
        self.inner.storage.mul_vec_into(x, y)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        let mut y = vec![0.0; self.n()];
        self.mul_vec_into(x, &mut y);
        Ok(y)
    }

    /// `A x` for a probability vector; the image stays on the simplex.
    pub fn apply(&self, x: &ProbabilityVector) -> Result<ProbabilityVector> {
        Ok(ProbabilityVector {
            values: self.mul_vec(x.as_slice())?,
        })
    }
}

/// A point of the probability simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    values: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(i) = values.iter().position(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::NotProbabilityVector(format!("entry {} is {}", i + 1, values[i])));
        }
        let s: f64 = values.iter().sum();
        if (s - 1.0).abs() > STOCHASTIC_TOL {
            return Err(Error::NotProbabilityVector(format!("entries sum to {s}")));
        }
        Ok(Self { values })
    }

    /// Normalizes non-negative weights onto the simplex.
    pub fn from_weights(mut values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::NotProbabilityVector(format!(
                "weight {} is {}",
                i + 1,
                values[i]
            )));
        }
        let s: f64 = values.iter().sum();
        if !(s > 0.0) {
            return Err(Error::NotProbabilityVector("weights sum to zero".into()));
        }
        values.iter_mut().for_each(|v| *v /= s);
        Ok(Self { values })
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            values: vec![1.0 / n as f64; n],
        }
    }

    /// Standard basis vector `e_i`.
    pub fn vertex(n: usize, i: usize) -> Self {
        let mut values = vec![0.0; n];
        values[i] = 1.0;
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }
}

/// A non-empty, strictly increasing set of vertex indices of `{0..universe}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    universe: usize,
    indices: Vec<usize>,
}

impl IndexSet {
    /// Accepts indices in any order; duplicates are an error.
    pub fn new(universe: usize, mut indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidIndexSet("index set is empty".into()));
        }
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndexSet(format!("duplicate index {}", w[0] + 1)));
        }
        if let Some(&i) = indices.last().filter(|&&i| i >= universe) {
            return Err(Error::IndexOutOfRange {
                index: i + 1,
                n: universe,
            });
        }
        Ok(Self { universe, indices })
    }

    pub fn from_one_based(universe: usize, indices: &[usize]) -> Result<Self> {
        if let Some(&i) = indices.iter().find(|&&i| i == 0) {
            return Err(Error::IndexOutOfRange { index: i, n: universe });
        }
        Self::new(universe, indices.iter().map(|i| i - 1).collect())
    }

    pub fn full(n: usize) -> Self {
        Self {
            universe: n,
            indices: (0..n).collect(),
        }
    }

    /// `{0, .., s-1}`.
    pub fn leading(n: usize, s: usize) -> Result<Self> {
        Self::new(n, (0..s.min(n)).collect())
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.indices.len() == self.universe
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    /// Sorted complement; empty when the set is the whole universe.
    pub fn complement(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.universe - self.indices.len());
        let mut k = 0;
        for i in 0..self.universe {
            if k < self.indices.len() && self.indices[k] == i {
                k += 1;
            } else {
                out.push(i);
            }
        }
        out
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i + 1).collect()
    }
}

/// `sum |v_i|`.
pub fn one_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

pub fn euclidean_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Euclidean distance between two vectors of equal length.
pub fn distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt())
}

/// `||A v - v||_2`.
pub fn residual(a: &StochasticMatrix, v: &[f64]) -> Result<f64> {
    let av = a.mul_vec(v)?;
    distance(&av, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> NonNegativeMatrix {
        NonNegativeMatrix::from_rows(&[vec![0.0, 0.9, 0.0], vec![0.5, 0.0, 1.0], vec![0.5, 0.1, 0.0]]).unwrap()
    }

    #[test]
    fn validate_accepts_example_and_identity() {
        assert!(validate_stochastic(example()).is_ok());
        let id = NonNegativeMatrix::from_dense(DMatrix::identity(4, 4)).unwrap();
        assert!(validate_stochastic(id).is_ok());
    }

    #[test]
    fn validate_reports_bad_column() {
        let m = NonNegativeMatrix::from_rows(&[vec![0.5, 0.6], vec![0.5, 0.5]]).unwrap();
        match validate_stochastic(m) {
            Err(Error::ColumnSumViolation { col, sum }) => {
                assert_eq!(col, 2);
                assert!((sum - 1.1).abs() < 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negative_entries_rejected() {
        let r = NonNegativeMatrix::from_rows(&[vec![1.0, -0.1], vec![0.0, 1.1]]);
        assert_eq!(r, Err(Error::NegativeEntry { row: 1, col: 2 }));
    }

    #[test]
    fn projection() {
        let m = NonNegativeMatrix::from_rows(&[vec![2.0, 0.0], vec![2.0, 3.0]]).unwrap();
        let p = project_columns(m).unwrap();
        assert_eq!(p.to_dense(), DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.5, 1.0]));

        let a = validate_stochastic(example()).unwrap();
        let again = project_columns(a.clone().into_non_negative()).unwrap();
        assert!((a.to_dense() - again.to_dense()).amax() <= 1e-15);

        let z = NonNegativeMatrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(project_columns(z), Err(Error::ZeroColumn(1)));
    }

    #[test]
    fn submatrix_examples() {
        let m = example();
        let ab = m.submatrix(&[0, 1], &[0, 1]).unwrap();
        assert_eq!(ab, DMatrix::from_row_slice(2, 2, &[0.0, 0.9, 0.5, 0.0]));
        assert_eq!(m.submatrix(&[0, 1, 2], &[0, 1, 2]).unwrap(), m.to_dense());
        let row3 = m.submatrix(&[2], &[0, 1]).unwrap();
        assert_eq!(row3, DMatrix::from_row_slice(1, 2, &[0.5, 0.1]));
        assert_eq!(m.submatrix(&[3], &[0]), Err(Error::IndexOutOfRange { index: 4, n: 3 }));
    }

    #[test]
    fn norms_and_residual() {
        assert_eq!(one_norm(&[0.5, -0.5]), 1.0);
        let id = StochasticMatrix::identity(2);
        assert_eq!(residual(&id, &[0.3, 0.7]).unwrap(), 0.0);
        let a = StochasticMatrix::from_rows(&[vec![0.0, 0.9], vec![1.0, 0.1]]).unwrap();
        let v = [0.9 / 1.9, 1.0 / 1.9];
        assert!(residual(&a, &v).unwrap() < 1e-15);
        assert!(matches!(residual(&a, &[1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn sparse_and_dense_agree() {
        let d = example();
        let s = NonNegativeMatrix::from_csc(CscMatrix::from_dense(&d.to_dense())).unwrap();
        assert!(s.is_sparse());
        assert_eq!(s.to_dense(), d.to_dense());
        let a = validate_stochastic(s).unwrap();
        let b = validate_stochastic(d).unwrap();
        let x = [0.2, 0.3, 0.5];
        assert_eq!(a.mul_vec(&x).unwrap(), b.mul_vec(&x).unwrap());
        assert_eq!(a.as_non_negative().transpose().to_dense(), b.to_dense().transpose());
    }

    #[test]
    fn triplets_sum_duplicates() {
        let m = CscMatrix::from_triplets(2, vec![(0, 0, 0.25), (0, 0, 0.25), (1, 0, 0.5), (1, 1, 0.0)]).unwrap();
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(0, 0), 0.5);
        assert_eq!(m.get(1, 1), 0.0);
    }

    #[test]
    fn index_sets() {
        let s = IndexSet::from_one_based(5, &[4, 2]).unwrap();
        assert_eq!(s.as_slice(), &[1, 3]);
        assert_eq!(s.complement(), vec![0, 2, 4]);
        assert_eq!(s.to_one_based(), vec![2, 4]);
        assert!(IndexSet::new(3, vec![]).is_err());
        assert!(IndexSet::new(3, vec![1, 1]).is_err());
        assert!(IndexSet::new(3, vec![3]).is_err());
        assert!(IndexSet::full(3).complement().is_empty());
    }

    #[test]
    fn probability_vectors() {
        assert!(ProbabilityVector::new(vec![0.3, 0.7]).is_ok());
        assert!(ProbabilityVector::new(vec![0.3, 0.8]).is_err());
        assert!(ProbabilityVector::new(vec![-0.1, 1.1]).is_err());
        let w = ProbabilityVector::from_weights(vec![1.0, 3.0]).unwrap();
        assert_eq!(w.as_slice(), &[0.25, 0.75]);
    }
}
