//! Truncated power series with exact rational coefficients, algebraic
//! equations in one unknown series, and builders for every generating
//! function the crate works with.

mod algebraic;
pub mod equations;
mod gf;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::Poly;

pub use algebraic::{solve_algebraic, BivarPoly};
pub use gf::{
    closed_form_t, master_identity_residual, schroeder, series_extended_rna, series_g, series_h, series_rm, series_t,
    series_t_with, series_z, series_zm, structural, Structural, Transcription, DEFAULT_ORDER, MAX_ORDER,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by a series with zero constant term")]
    ZeroConstant,
    #[error("square root needs a rational square as constant term")]
    NotSquare,
    #[error("series has nonzero coefficients below x^{0}")]
    Valuation(usize),
    #[error("branch condition fails: {0}")]
    Branch(String),
    #[error("residual of the solved series is nonzero at x^{0}")]
    Residual(usize),
    #[error("{what}: routes disagree at x^{index}")]
    RouteMismatch { what: String, index: usize },
    #[error("{what}: coefficient of x^{index} is not a nonnegative integer")]
    NotCounting { what: String, index: usize },
    #[error("regularity parameter m = {0} must be at least 2")]
    BadM(usize),
    #[error("interval type {0} is not in 1..=6")]
    BadType(u8),
    #[error("order {0} exceeds the configured maximum")]
    OrderTooLarge(usize),
}

/// `c_0 + c_1 x + ... + c_N x^N + O(x^(N+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    c: Vec<BigRational>,
}

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

impl Series {
    /// Coefficients through `x^order`, zero-padded or truncated as needed.
    pub fn new(mut c: Vec<BigRational>, order: usize) -> Self {
        c.resize(order + 1, BigRational::zero());
        Series { c }
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::new(vec![BigRational::one()], order)
    }

    pub fn from_ints(c: &[i64], order: usize) -> Self {
        Series::new(c.iter().map(|&v| rat(v)).collect(), order)
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        Series::new(p.coeffs().iter().take(order + 1).map(|v| rat(v.clone())).collect(), order)
    }

    /// `x^lo + x^(lo+1) + ... + x^(hi-1)`.
    pub fn geometric(lo: usize, hi: usize, order: usize) -> Self {
        let mut s = Series::zero(order);
        for k in lo..hi.min(order + 1) {
            s.c[k] = BigRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.c[k]
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order(), "cannot raise the truncation order");
        Series { c: self.c[..=order].to_vec() }
    }

    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|v| v.is_integer())
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.c.iter().position(|v| !v.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }

    /// Integer coefficients; `None` if some coefficient is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.c.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
    }

    /// Checks every coefficient is a nonnegative integer.
    pub fn check_counting(&self, what: &str) -> Result<(), SeriesError> {
        match self.c.iter().position(|v| !v.is_integer() || v.is_negative()) {
            Some(index) => Err(SeriesError::NotCounting { what: what.to_string(), index }),
            None => Ok(()),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Series {
        Series { c: self.c.iter().map(|v| v * k).collect() }
    }

    /// Multiplies by `x^k`, keeping the truncation order.
    pub fn mul_x_pow(&self, k: usize) -> Series {
        let n = self.c.len();
        let mut c = vec![BigRational::zero(); k.min(n)];
        c.extend(self.c.iter().take(n.saturating_sub(k)).cloned());
        Series { c }
    }

    /// Divides by `x^k`; the truncation order drops by `k`.
    pub fn div_x_pow(&self, k: usize) -> Result<Series, SeriesError> {
        if self.c.iter().take(k).any(|v| !v.is_zero()) {
            return Err(SeriesError::Valuation(k));
        }
        assert!(k <= self.order());
        Ok(Series { c: self.c[k..].to_vec() })
    }

    pub fn derivative(&self) -> Series {
        let n = self.order();
        if n == 0 {
            return Series::zero(0);
        }
        Series { c: (1..=n).map(|k| &self.c[k] * rat(k)).collect() }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<Series, SeriesError> {
        let a0 = &self.c[0];
        if a0.is_zero() {
            return Err(SeriesError::ZeroConstant);
        }
        let n = self.c.len();
        if self.is_integral() && a0.abs().is_one() {
            let a: Vec<BigInt> = self.c.iter().map(|v| v.to_integer()).collect();
            let s = a0.to_integer();
            let mut r: Vec<BigInt> = Vec::with_capacity(n);
            r.push(s.clone());
            for k in 1..n {
                let acc: BigInt = (1..=k).map(|j| &a[j] * &r[k - j]).sum();
                r.push(-acc * &s);
            }
            return Ok(Series { c: r.into_iter().map(BigRational::from_integer).collect() });
        }
        let inv0 = a0.recip();
        let mut r: Vec<BigRational> = Vec::with_capacity(n);
        r.push(inv0.clone());
        for k in 1..n {
            let acc: BigRational = (1..=k).map(|j| &self.c[j] * &r[k - j]).sum();
            r.push(-acc * &inv0);
        }
        Ok(Series { c: r })
    }

    pub fn div(&self, rhs: &Series) -> Result<Series, SeriesError> {
        Ok(self * &rhs.inv()?)
    }

    /// Square root with the positive constant term.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        let a0 = &self.c[0];
        if a0.is_negative() || a0.is_zero() {
            return Err(SeriesError::NotSquare);
        }
        let (num, den) = (a0.numer().sqrt(), a0.denom().sqrt());
        let s0 = BigRational::new(num, den);
        if &(&s0 * &s0) != a0 {
            return Err(SeriesError::NotSquare);
        }
        let two_s0 = &s0 * rat(2);
        let n = self.c.len();
        let mut s: Vec<BigRational> = Vec::with_capacity(n);
        s.push(s0);
        for k in 1..n {
            let acc: BigRational = (1..k).map(|j| &s[j] * &s[k - j]).sum();
            s.push((&self.c[k] - acc) / &two_s0);
        }
        Ok(Series { c: s })
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.c.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, " + O(x^{})", self.c.len())
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series { c: self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series { c: self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { c: self.c.iter().map(|v| -v).collect() }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = self.c.len().min(rhs.c.len());
        if self.is_integral() && rhs.is_integral() {
            let a: Vec<BigInt> = self.c[..n].iter().map(|v| v.to_integer()).collect();
            let b: Vec<BigInt> = rhs.c[..n].iter().map(|v| v.to_integer()).collect();
            let mut c = vec![BigInt::zero(); n];
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (j, bj) in b[..n - i].iter().enumerate() {
                    c[i + j] += ai * bj;
                }
            }
            return Series { c: c.into_iter().map(BigRational::from_integer).collect() };
        }
        let mut c = vec![BigRational::zero(); n];
        for (i, ai) in self.c[..n].iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in rhs.c[..n - i].iter().enumerate() {
                c[i + j] += ai * bj;
            }
        }
        Series { c }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.to_integers().unwrap().iter().map(|v| i64::try_from(v).unwrap()).collect()
    }

    #[test]
    fn product_of_binomials() {
        let a = Series::from_ints(&[1, 1], 4);
        let b = Series::from_ints(&[1, -1], 4);
        assert_eq!(ints(&(&a * &b)), vec![1, 0, -1, 0, 0]);
    }

    #[test]
    fn inverse_and_division() {
        let a = Series::from_ints(&[1, -1], 5);
        assert_eq!(ints(&a.inv().unwrap()), vec![1; 6]);
        let b = Series::from_ints(&[2, 1], 3);
        let q = Series::one(3).div(&b).unwrap();
        assert_eq!(&q * &b, Series::one(3));
        assert_eq!(Series::from_ints(&[0, 1], 3).inv(), Err(SeriesError::ZeroConstant));
    }

    #[test]
    fn square_root() {
        let a = Series::from_ints(&[1, -6, 1], 8);
        let s = a.sqrt().unwrap();
        assert_eq!(ints(&s)[..5], [1, -3, -4, -12, -44]);
        assert_eq!(&s * &s, a);
        let q = Series::new(vec![BigRational::new(4.into(), 9.into()), rat(1)], 4);
        let r = q.sqrt().unwrap();
        assert_eq!(&r * &r, q);
        assert_eq!(Series::from_ints(&[2, 1], 3).sqrt(), Err(SeriesError::NotSquare));
    }

    #[test]
    fn shifts_and_derivative() {
        let a = Series::from_ints(&[1, 2, 3, 4], 3);
        assert_eq!(ints(&a.mul_x_pow(2)), vec![0, 0, 1, 2]);
        assert_eq!(ints(&a.mul_x_pow(2).div_x_pow(2).unwrap()), vec![1, 2]);
        assert!(a.div_x_pow(1).is_err());
        assert_eq!(ints(&a.derivative()), vec![2, 6, 12]);
        assert_eq!(ints(&Series::geometric(1, 3, 4)), vec![0, 1, 1, 0, 0]);
    }
}
