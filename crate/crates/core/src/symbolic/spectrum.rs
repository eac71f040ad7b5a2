//! Spectrum of a reduced graph: roots of the cleared numerator of
//! `det(R(lambda) - lambda I)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use super::graph::WeightedDigraph;
use super::poly::Polynomial;
use super::rational::RationalFunction;
use crate::error::{Error, Result};
use crate::spectral::{eigenvalues, sort_spectrum};

/// Exact determinant over the field of rational functions.
pub fn determinant(m: &[Vec<RationalFunction>]) -> Result<RationalFunction> {
    let n = m.len();
    let mut a: Vec<Vec<RationalFunction>> = m.to_vec();
    let mut det = RationalFunction::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(RationalFunction::zero());
        };
        if p != k {
            a.swap(p, k);
            det = -&det;
        }
        let pivot = a[k][k].clone();
        det = &det * &pivot;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].checked_div(&pivot)?;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] = &a[i][j] - &t;
            }
        }
    }
    Ok(det)
}

/// The polynomial whose roots are the spectrum of the reduced graph.
pub fn reduced_characteristic(r: &WeightedDigraph) -> Result<Polynomial> {
    let mut m = r.adjacency();
    let lambda = RationalFunction::lambda();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = &row[i] - &lambda;
    }
    let det = determinant(&m)?;
    if det.is_zero() {
        return Err(Error::DegenerateDeterminant);
    }
    Ok(det.num().monic())
}

/// Roots with multiplicity, sorted by modulus then real part, descending.
pub fn polynomial_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let mut roots = Vec::new();
    for (factor, mult) in p.squarefree() {
        let c = factor.monic().coeffs_f64();
        let d = c.len() - 1;
        let simple: Vec<Complex64> = if d == 1 {
            vec![Complex64::new(-c[0], 0.0)]
        } else {
            // companion matrix: sub-diagonal ones, last column -c_k
            let mut comp = DMatrix::zeros(d, d);
            for i in 1..d {
                comp[(i, i - 1)] = 1.0;
            }
            for i in 0..d {
                comp[(i, d - 1)] = -c[i];
            }
            eigenvalues(&comp)?
        };
        for z in simple {
            roots.extend(std::iter::repeat_n(z, mult));
        }
    }
    sort_spectrum(&mut roots);
    Ok(roots)
}

/// The `lambda`-dependent spectrum of a reduced graph as a root multiset.
pub fn reduced_spectrum(r: &WeightedDigraph) -> Result<Vec<Complex64>> {
    let p = reduced_characteristic(r)?;
    if p.degree().is_none_or(|d| d.is_zero()) {
        return Ok(Vec::new());
    }
    polynomial_roots(&p)
}
