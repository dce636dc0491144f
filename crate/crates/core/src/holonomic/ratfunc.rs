use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::poly::{gcd, Poly};

/// A rational function `num / den` with `num, den` in `Z[x]`, coprime in
/// `Z[x]` (so contents are coprime too) and `den` with a positive leading
/// coefficient. Equal functions have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) && g.lc().is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if den.lc().is_negative() {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        // Cancel crosswise first to keep the products small.
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFunc::new(&n1 * &n2, &d1 * &d2)
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        self.mul(&RatFunc::from_poly(p.clone()))
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> RatFunc {
        self.mul(&o.inv())
    }

    pub fn scale(&self, k: &BigInt) -> RatFunc {
        RatFunc::new(self.num.scale(k), self.den.clone())
    }

    pub fn derivative(&self) -> RatFunc {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.lc().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

/// Clears denominators of a vector of rational functions: returns integer
/// polynomials proportional to the input with no common polynomial factor.
pub fn clear_denominators(v: &[RatFunc]) -> Vec<Poly> {
    let mut l = Poly::one();
    for r in v {
        if !r.is_zero() {
            l = crate::poly::lcm(&l, r.den());
        }
    }
    let polys: Vec<Poly> =
        v.iter().map(|r| if r.is_zero() { Poly::zero() } else { &r.num * &l.div_exact(&r.den).unwrap() }).collect();
    remove_common_factor(polys)
}

/// Divides a list of polynomials by their gcd in `Z[x]`.
pub fn remove_common_factor(polys: Vec<Poly>) -> Vec<Poly> {
    let mut g = Poly::zero();
    for p in &polys {
        if !p.is_zero() {
            g = gcd(&g, p);
            if g.degree() == Some(0) && g.lc().is_one() {
                return polys;
            }
        }
    }
    if g.is_zero() {
        return polys;
    }
    polys.into_iter().map(|p| p.div_exact(&g).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn canonical_form() {
        let a = RatFunc::new(p(&[2, 2]), p(&[-4, 0, 4]));
        assert_eq!(a, RatFunc::new(p(&[1]), p(&[-2, 2])));
        let b = RatFunc::new(p(&[2]), p(&[3, 6]));
        assert_eq!(b.num(), &p(&[2]));
        assert_eq!(b.den(), &p(&[3, 6]));
        assert_eq!(RatFunc::new(p(&[1]), p(&[0, -1])).den(), &p(&[0, 1]));
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(p(&[1]), p(&[1, -1]));
        let b = RatFunc::new(p(&[0, 1]), p(&[1, -1]));
        assert_eq!(a.sub(&b), RatFunc::one());
        assert_eq!(a.mul(&a.inv()), RatFunc::one());
        // d/dx 1/(1-x) = 1/(1-x)^2
        assert_eq!(a.derivative(), a.mul(&a));
    }

    #[test]
    fn denominators_cleared() {
        let v = [RatFunc::new(p(&[1]), p(&[0, 2])), RatFunc::new(p(&[1]), p(&[0, 0, 3]))];
        assert_eq!(clear_denominators(&v), vec![p(&[0, 3]), p(&[2])]);
    }
}
