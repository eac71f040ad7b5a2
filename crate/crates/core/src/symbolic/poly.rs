//! Univariate polynomials in `lambda` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficients in ascending degree; no trailing zeros, the zero
/// polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `lambda`.
    pub fn lambda() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// `lambda - r`.
    pub fn linear_root(r: BigRational) -> Self {
        Self::new(vec![-r, BigRational::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.leading().ok_or(Error::DivisionByZeroFunction)?.clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).expect("divisor is non-zero").1;
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs_f64().iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Yun's square-free decomposition of a monic version of `self`:
    /// `self ~ prod_k f_k^k`, returned as `(f_k, k)` with non-constant `f_k`.
    pub fn squarefree(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let d = f.derivative();
        let a0 = Self::gcd(&f, &d);
        let mut b = f.div_rem(&a0).expect("gcd is non-zero").0;
        let mut c = d.div_rem(&a0).expect("gcd is non-zero").0;
        let mut e = &c - &b.derivative();
        let mut k = 1;
        while !b.is_constant() {
            let a = Self::gcd(&b, &e);
            if !a.is_constant() {
                out.push((a.clone(), k));
            }
            b = b.div_rem(&a).expect("gcd is non-zero").0;
            c = e.div_rem(&a).expect("gcd is non-zero").0;
            e = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// Parses space-separated ascending coefficients such as `0 1/2 -3`.
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let coeffs = s
            .split_whitespace()
            .map(parse_rational)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }
}

pub fn parse_rational(tok: &str) -> std::result::Result<BigRational, String> {
    let bad = || format!("invalid rational '{tok}'");
    match tok.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(format!("zero denominator in '{tok}'"));
            }
            Ok(BigRational::new(n, d))
        }
        None => match tok.parse::<BigInt>() {
            Ok(n) => Ok(BigRational::from_integer(n)),
            // decimals are read exactly through their binary value
            Err(_) => {
                let f: f64 = tok.parse().map_err(|_| bad())?;
                BigRational::from_float(f).ok_or_else(bad)
            }
        },
    }
}

/// Exact characteristic polynomial `det(lambda I - M)` by the
/// Faddeev-LeVerrier recurrence.
pub fn characteristic_polynomial(m: &[Vec<BigRational>]) -> Polynomial {
    let n = m.len();
    // c[k] is the coefficient of lambda^k; c[n] = 1
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut mk: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = M * M_{k-1} + c_{n-k+1} I
        let prev = mk.clone();
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    if !m[i][l].is_zero() && !prev[l][j].is_zero() {
                        s += &m[i][l] * &prev[l][j];
                    }
                }
                if i == j {
                    s += &c[n - k + 1];
                }
                mk[i][j] = s;
            }
        }
        // c_{n-k} = -tr(M M_k) / k
        let mut tr = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                if !m[i][l].is_zero() && !mk[l][i].is_zero() {
                    tr += &m[i][l] * &mk[l][i];
                }
            }
        }
        c[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    Polynomial::new(c)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        Polynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + o.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self + &(-o)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}λ", if show_coeff { "·" } else { "" })?,
                _ => write!(f, "{}λ^{k}", if show_coeff { "·" } else { "" })?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_division() {
        let p = Polynomial::from_i64(&[-1, 0, 1]); // λ² - 1
        let q = Polynomial::from_i64(&[-1, 1]); // λ - 1
        let (quo, r) = p.div_rem(&q).unwrap();
        assert_eq!(quo, Polynomial::from_i64(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(&quo * &q, p);
        assert_eq!(Polynomial::gcd(&p, &q.scale(&rat(3, 1))), q);
        assert!(p.div_rem(&Polynomial::zero()).is_err());
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = Polynomial::new(vec![rat(1, 1), rat(0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Polynomial::new(vec![rat(0, 1)]), Polynomial::zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn squarefree_decomposition() {
        // λ^2 (λ - 1)^3 (λ + 2)
        let l = Polynomial::lambda();
        let p = &(&l.pow(2) * &Polynomial::from_i64(&[-1, 1]).pow(3)) * &Polynomial::from_i64(&[2, 1]);
        let sf = p.squarefree();
        let prod = sf
            .iter()
            .fold(Polynomial::one(), |acc, (f, k)| &acc * &f.pow(*k as u32));
        assert_eq!(prod, p.monic());
        let by_mult: Vec<usize> = sf.iter().map(|(_, k)| *k).collect();
        assert_eq!(by_mult, vec![1, 2, 3]);
    }

    #[test]
    fn charpoly_of_small_matrix() {
        // [[2, 1], [1, 2]] -> λ² - 4λ + 3
        let m = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(2, 1)]];
        assert_eq!(characteristic_polynomial(&m), Polynomial::from_i64(&[3, -4, 1]));
    }

    #[test]
    fn parse_and_display() {
        let p = Polynomial::parse("1/2 0 -3").unwrap();
        assert_eq!(p.coeffs(), &[rat(1, 2), rat(0, 1), rat(-3, 1)]);
        assert_eq!(p.to_string(), "-3·λ^2 + 1/2");
        assert_eq!(Polynomial::lambda().to_string(), "λ");
        assert!(Polynomial::parse("1/0").is_err());
        assert!(Polynomial::parse("x").is_err());
        assert_eq!(Polynomial::parse("0.5").unwrap(), Polynomial::constant(rat(1, 2)));
    }

    #[test]
    fn evaluation() {
        let p = Polynomial::from_i64(&[1, 2, 3]);
        assert_eq!(p.eval(&rat(1, 2)), rat(11, 4));
        assert!((p.eval_f64(0.5) - 2.75).abs() < 1e-15);
    }
}
