//! Binary fixed-point reals: an integer mantissa `m` standing for
//! `m / 2^bits`. Every operation truncates toward negative infinity at the
//! working precision, so errors are a few units in the last place.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixed {
    m: BigInt,
    bits: u64,
}

impl Fixed {
    pub fn from_int(v: impl Into<BigInt>, bits: u64) -> Fixed {
        Fixed { m: v.into() << bits as usize, bits }
    }

    pub fn zero(bits: u64) -> Fixed {
        Fixed { m: BigInt::zero(), bits }
    }

    /// `num / 2^k`, rounded to `bits` fractional bits.
    pub fn from_dyadic(num: &BigInt, k: u64, bits: u64) -> Fixed {
        let m = if bits >= k { num << (bits - k) as usize } else { num >> (k - bits) as usize };
        Fixed { m, bits }
    }

    pub fn from_rational(r: &BigRational, bits: u64) -> Fixed {
        Fixed { m: (r.numer() << bits as usize).div_floor(r.denom()), bits }
    }

    pub fn from_f64(v: f64, bits: u64) -> Fixed {
        let r = BigRational::from_float(v).expect("finite float");
        Fixed::from_rational(&r, bits)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    /// Same value at another precision.
    pub fn with_bits(&self, bits: u64) -> Fixed {
        Fixed::from_dyadic(&self.m, self.bits, bits)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.m.clone(), BigInt::one() << self.bits as usize)
    }

    pub fn to_f64(&self) -> f64 {
        // Keep 64 significant bits before converting.
        let excess = self.m.bits().saturating_sub(64);
        let top = (&self.m >> excess as usize).to_f64().unwrap();
        top * 2f64.powi(excess as i32 - self.bits as i32)
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn abs(&self) -> Fixed {
        Fixed { m: self.m.abs(), bits: self.bits }
    }

    fn check(&self, o: &Fixed) {
        assert_eq!(self.bits, o.bits, "mixed precisions");
    }

    pub fn add(&self, o: &Fixed) -> Fixed {
        self.check(o);
        Fixed { m: &self.m + &o.m, bits: self.bits }
    }

    pub fn sub(&self, o: &Fixed) -> Fixed {
        self.check(o);
        Fixed { m: &self.m - &o.m, bits: self.bits }
    }

    pub fn neg(&self) -> Fixed {
        Fixed { m: -&self.m, bits: self.bits }
    }

    pub fn mul(&self, o: &Fixed) -> Fixed {
        self.check(o);
        Fixed { m: (&self.m * &o.m) >> self.bits as usize, bits: self.bits }
    }

    pub fn mul_int(&self, k: &BigInt) -> Fixed {
        Fixed { m: &self.m * k, bits: self.bits }
    }

    pub fn div(&self, o: &Fixed) -> Fixed {
        self.check(o);
        assert!(!o.m.is_zero(), "division by zero");
        Fixed { m: (&self.m << self.bits as usize).div_floor(&o.m), bits: self.bits }
    }

    pub fn div_int(&self, k: &BigInt) -> Fixed {
        Fixed { m: self.m.div_floor(k), bits: self.bits }
    }

    pub fn recip(&self) -> Fixed {
        Fixed::from_int(1, self.bits).div(self)
    }

    /// Square root of a nonnegative value.
    pub fn sqrt(&self) -> Fixed {
        assert!(!self.m.is_negative(), "square root of a negative number");
        Fixed { m: (&self.m << self.bits as usize).sqrt(), bits: self.bits }
    }

    pub fn powi(&self, e: u64) -> Fixed {
        let mut acc = Fixed::from_int(1, self.bits);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `pi` by Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
    pub fn pi(bits: u64) -> Fixed {
        let guard = bits + 16;
        let atan_inv = |q: i64| -> BigInt {
            // atan(1/q) = sum (-1)^k / ((2k+1) q^(2k+1))
            let q = BigInt::from(q);
            let q2 = &q * &q;
            let mut power = (BigInt::one() << guard as usize) / &q;
            let mut sum = BigInt::zero();
            let mut k = 0u64;
            while !power.is_zero() {
                let term = &power / BigInt::from(2 * k + 1);
                if k.is_multiple_of(2) {
                    sum += term;
                } else {
                    sum -= term;
                }
                power /= &q2;
                k += 1;
            }
            sum
        };
        let m = atan_inv(5) * 16 - atan_inv(239) * 4;
        Fixed::from_dyadic(&m, guard, bits)
    }

    /// Evaluates an integer polynomial by Horner's rule.
    pub fn eval_poly(p: &Poly, x: &Fixed) -> Fixed {
        let mut acc = Fixed::zero(x.bits);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(x).add(&Fixed::from_int(c.clone(), x.bits));
        }
        acc
    }

    /// Decimal expansion with `digits` digits after the point, truncated.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scaled = (self.m.abs() * BigInt::from(10).pow(digits as u32)) >> self.bits as usize;
        let s = scaled.to_string();
        let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if self.m.sign() == Sign::Minus { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, o: &Fixed) -> Option<Ordering> {
        (self.bits == o.bits).then(|| self.m.cmp(&o.m))
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(f.precision().unwrap_or(20)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let pi = Fixed::pi(200);
        assert_eq!(pi.to_decimal(50), "3.14159265358979323846264338327950288419716939937510");
    }

    #[test]
    fn sqrt_two() {
        let s = Fixed::from_int(2, 200).sqrt();
        assert_eq!(s.to_decimal(40), "1.4142135623730950488016887242096980785696");
        assert!((s.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn field_ops_and_decimal() {
        let bits = 128;
        let third = Fixed::from_int(1, bits).div(&Fixed::from_int(3, bits));
        assert_eq!(third.to_decimal(10), "0.3333333333");
        assert_eq!(third.neg().to_decimal(3), "-0.333");
        let r = Fixed::from_rational(&BigRational::new(7.into(), 4.into()), bits);
        assert_eq!(r.powi(2).to_decimal(4), "3.0625");
        let p = Poly::from_i64s(&[1, 2, 1]);
        assert_eq!(Fixed::eval_poly(&p, &r).to_decimal(4), "7.5625");
    }
}
