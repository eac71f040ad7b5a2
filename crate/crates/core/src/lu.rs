//! Dense LU with partial pivoting, transposed solves and a 1-norm
//! condition estimate (Hager's method with Higham's safeguard vector).

use nalgebra::DMatrix;

#[derive(Debug, Clone)]
pub struct DenseLu {
    n: usize,
    // column-major packed L (unit, strictly lower) and U
    lu: Vec<f64>,
    // row `i` of PA is row `perm[i]` of A
    perm: Vec<usize>,
    norm1: f64,
}

impl DenseLu {
    /// Returns `None` when a pivot column is exactly zero.
    pub fn factor(a: &DMatrix<f64>) -> Option<Self> {
        let n = a.nrows();
        assert_eq!(n, a.ncols(), "LU needs a square matrix");
        let norm1 = norm1(a);
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let col_k = k * n;
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[col_k + i].abs()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmax == 0.0 || !pmax.is_finite() {
                return None;
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    lu.swap(j * n + p, j * n + k);
                }
            }
            let pivot = lu[col_k + k];
            for i in k + 1..n {
                lu[col_k + i] /= pivot;
            }
            let (head, tail) = lu.split_at_mut((k + 1) * n);
            let lcol = &head[col_k + k + 1..col_k + n];
            for j in 0..n - k - 1 {
                let col = &mut tail[j * n..(j + 1) * n];
                let ukj = col[k];
                if ukj == 0.0 {
                    continue;
                }
                for (x, &l) in col[k + 1..].iter_mut().zip(lcol) {
                    *x -= l * ukj;
                }
            }
        }
        Some(Self { n, lu, perm, norm1 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.lu[j * self.n + i]
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        // L y = Pb, column-oriented
        for j in 0..n {
            let xj = x[j];
            if xj != 0.0 {
                for i in j + 1..n {
                    x[i] -= self.at(i, j) * xj;
                }
            }
        }
        // U x = y
        for j in (0..n).rev() {
            x[j] /= self.at(j, j);
            let xj = x[j];
            if xj != 0.0 {
                for i in 0..j {
                    x[i] -= self.at(i, j) * xj;
                }
            }
        }
        x
    }

    /// Solves `A^T x = b`.
    pub fn solve_transpose(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut w = b.to_vec();
        // U^T w = b
        for i in 0..n {
            let mut s = w[i];
            for k in 0..i {
                s -= self.at(k, i) * w[k];
            }
            w[i] = s / self.at(i, i);
        }
        // L^T z = w
        for i in (0..n).rev() {
            let mut s = w[i];
            for k in i + 1..n {
                s -= self.at(k, i) * w[k];
            }
            w[i] = s;
        }
        let mut x = vec![0.0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = w[i];
        }
        x
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(b.nrows(), b.ncols());
        for j in 0..b.ncols() {
            let x = self.solve(b.column(j).as_slice());
            out.column_mut(j).copy_from_slice(&x);
        }
        out
    }

    /// Estimate of `||A||_1 ||A^{-1}||_1`.
    pub fn condition_estimate(&self) -> f64 {
        self.norm1 * self.inverse_norm1_estimate()
    }

    /// Estimate of `||A^{-1}||_1`.
    pub fn inverse_norm1_estimate(&self) -> f64 {
        let n = self.n;
        if n == 0 {
            return 0.0;
        }
        let mut x = vec![1.0 / n as f64; n];
        let mut est = 0.0;
        let mut last_j = usize::MAX;
        for _ in 0..5 {
            let y = self.solve(&x);
            est = y.iter().map(|v| v.abs()).sum::<f64>();
            if !est.is_finite() {
                return f64::INFINITY;
            }
            let xi: Vec<f64> = y.iter().map(|v| if *v >= 0.0 { 1.0 } else { -1.0 }).collect();
            let z = self.solve_transpose(&xi);
            let (j, zmax) = z
                .iter()
                .enumerate()
                .map(|(i, v)| (i, v.abs()))
                .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| a * b).sum();
            if zmax <= ztx || j == last_j {
                break;
            }
            last_j = j;
            x = vec![0.0; n];
            x[j] = 1.0;
        }
        let alt: Vec<f64> = (0..n)
            .map(|i| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                let frac = if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
                sign * (1.0 + frac)
            })
            .collect();
        let y = self.solve(&alt);
        let alt_est = 2.0 * y.iter().map(|v| v.abs()).sum::<f64>() / (3.0 * n as f64);
        est.max(alt_est)
    }
}

/// Maximum absolute column sum.
pub fn norm1(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> DMatrix<f64> {
        DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 1.0, 4.0, -6.0, 0.0, -2.0, 7.0, 2.0])
    }

    #[test]
    fn solves_match_nalgebra() {
        let a = sample();
        let lu = DenseLu::factor(&a).unwrap();
        let b = [5.0, -2.0, 9.0];
        let x = lu.solve(&b);
        let r = &a * nalgebra::DVector::from_column_slice(&x);
        for i in 0..3 {
            assert!((r[i] - b[i]).abs() < 1e-12);
        }
        let xt = lu.solve_transpose(&b);
        let rt = a.transpose() * nalgebra::DVector::from_column_slice(&xt);
        for i in 0..3 {
            assert!((rt[i] - b[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn condition_estimate_close_to_exact() {
        let a = sample();
        let inv = a.clone().try_inverse().unwrap();
        let exact = norm1(&a) * norm1(&inv);
        let est = DenseLu::factor(&a).unwrap().condition_estimate();
        assert!(est <= exact * (1.0 + 1e-12) && est >= exact / 3.0, "{est} vs {exact}");
    }

    #[test]
    fn singular_detected() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 1.0]);
        assert!(DenseLu::factor(&a).is_none());
        let near = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0 + 1e-15]);
        let c = DenseLu::factor(&near).unwrap().condition_estimate();
        assert!(c > 1e14);
    }
}
