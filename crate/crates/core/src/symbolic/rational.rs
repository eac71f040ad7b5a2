//! Rational functions `p(lambda) / q(lambda)` in canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Numerator and denominator are coprime and the denominator is monic, so
/// structural equality is equality of functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Polynomial::gcd(&num, &den);
        let mut num = num.div_rem(&g)?.0;
        let mut den = den.div_rem(&g)?.0;
        let lead = den.leading().expect("non-zero").recip();
        num = num.scale(&lead);
        den = den.scale(&lead);
        Ok(Self { num, den })
    }

    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self {
            num: Polynomial::constant(c),
            den: Polynomial::one(),
        }
    }

    pub fn lambda() -> Self {
        Self::from_poly(Polynomial::lambda())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// Exact value of a finite double.
    pub fn from_f64(x: f64) -> Self {
        Self::constant(BigRational::from_float(x).expect("finite value"))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// `None` at an exact pole of the rational value of `x`.
    pub fn eval_f64(&self, x: f64) -> Option<f64> {
        let xr = BigRational::from_float(x)?;
        self.eval(&xr).map(|v| v.to_f64().unwrap_or(f64::NAN))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.den {
            return RationalFunction::new(&self.num + &o.num, self.den.clone()).expect("non-zero denominator");
        }
        RationalFunction::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
            .expect("product of non-zero denominators")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &o.num, &self.den * &o.den).expect("product of non-zero denominators")
    }
}

/// Panics on division by the zero function; see [`RationalFunction::checked_div`].
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, o: &RationalFunction) -> RationalFunction {
        self.checked_div(o).expect("division by the zero function")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::rat;
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_i64(num), Polynomial::from_i64(den)).unwrap()
    }

    #[test]
    fn addition_example() {
        // λ/(λ-1) + 1/(λ-1) = (λ+1)/(λ-1)
        let a = rf(&[0, 1], &[-1, 1]);
        let b = rf(&[1], &[-1, 1]);
        assert_eq!(&a + &b, rf(&[1, 1], &[-1, 1]));
    }

    #[test]
    fn normalization_cancels_common_factor() {
        let r = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(r, RationalFunction::from_poly(Polynomial::from_i64(&[1, 1])));
        assert!(r.den().leading().unwrap().is_one());
        let scaled = rf(&[2], &[4, 2]);
        assert_eq!(scaled, rf(&[1], &[2, 1]));
    }

    #[test]
    fn product_with_zero() {
        let w = rf(&[3, 1], &[1, 0, 1]);
        assert!((&w * &RationalFunction::zero()).is_zero());
    }

    #[test]
    fn division_by_zero_rejected() {
        let w = rf(&[1], &[0, 1]);
        assert_eq!(
            w.checked_div(&RationalFunction::zero()),
            Err(Error::DivisionByZeroFunction)
        );
        assert_eq!(
            RationalFunction::new(Polynomial::one(), Polynomial::zero()),
            Err(Error::DivisionByZeroFunction)
        );
    }

    #[test]
    fn evaluation_and_poles() {
        let w = rf(&[1], &[0, 2]); // 1/(2λ)
        assert_eq!(w.eval(&rat(1, 1)), Some(rat(1, 2)));
        assert_eq!(w.eval(&rat(0, 1)), None);
        assert_eq!(w.eval_f64(0.25), Some(2.0));
    }
}
