//! Dense univariate polynomials over the integers.
//!
//! Besides ring arithmetic this module carries the pieces the rest of the
//! crate leans on: exact division, a modular gcd, a fraction-free
//! determinant for matrices of polynomials, and real root isolation with
//! exact dyadic refinement.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `c[0] + c[1] x + ... + c[d] x^d`, with no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(v: impl Into<BigInt>) -> Self {
        Poly::new(vec![v.into()])
    }

    /// The monomial `x^k`.
    pub fn x_pow(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        Poly { c }
    }

    /// `coef * x^k`.
    pub fn monomial(coef: impl Into<BigInt>, k: usize) -> Self {
        Poly::x_pow(k).scale(&coef.into())
    }

    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.c.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    /// Largest `k` with `x^k` dividing `self` (zero for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.c.iter().take_while(|v| v.is_zero()).count()
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|v| v * k).collect() }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    /// Divides by `x^k`, dropping any lower terms.
    pub fn unshift(&self, k: usize) -> Poly {
        Poly::new(self.c.iter().skip(k).cloned().collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.c.iter().enumerate().skip(1).map(|(k, v)| v * BigInt::from(k)).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for v in self.c.iter().rev() {
            acc = acc * x + v;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for v in self.c.iter().rev() {
            acc = acc * x + BigRational::from_integer(v.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, v| acc * x + v.to_f64().unwrap_or(f64::NAN))
    }

    /// `2^(d*bits) * f(num / 2^bits)` where `d` is the degree: the sign of
    /// `f` at a dyadic point, computed without fractions.
    pub fn eval_dyadic_scaled(&self, num: &BigInt, bits: u64) -> BigInt {
        let d = self.c.len().saturating_sub(1);
        let mut acc = BigInt::zero();
        for (k, v) in self.c.iter().enumerate().rev() {
            acc = acc * num + (v << (bits as usize * (d - k)));
        }
        acc
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for v in &self.c {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, normalised to a positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        Poly { c: self.c.iter().map(|v| v / &g).collect() }
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_exact_int(&self, k: &BigInt) -> Option<Poly> {
        let mut c = Vec::with_capacity(self.c.len());
        for v in &self.c {
            let (q, r) = v.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            c.push(q);
        }
        Some(Poly { c })
    }

    /// Exact division in `Z[x]`; `None` unless `d` divides `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (n, m) = (self.c.len(), d.c.len());
        if n < m {
            return None;
        }
        let lc = d.lc();
        let mut rem = self.c.clone();
        let mut q = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let top = &rem[k + m - 1];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in d.c.iter().enumerate() {
                rem[k + j] -= &qk * dj;
            }
            q[k] = qk;
        }
        if rem.iter().all(|v| v.is_zero()) {
            Some(Poly::new(q))
        } else {
            None
        }
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero());
        let m = d.c.len();
        let lc = d.lc();
        let mut r = self.clone();
        while r.c.len() >= m {
            let shift = r.c.len() - m;
            let t = r.lc();
            r = &r.scale(&lc) - &d.shift(shift).scale(&t);
        }
        r
    }

    /// Taylor shift `f(x + 1)`.
    pub fn taylor_shift_one(&self) -> Poly {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].clone();
                c[j] += t;
            }
        }
        Poly::new(c)
    }

    /// `x^d f(1/x)`.
    pub fn reverse(&self) -> Poly {
        let mut c = self.c.clone();
        c.reverse();
        Poly::new(c)
    }

    /// `2^d f(x / 2)`.
    pub fn halve_argument(&self) -> Poly {
        let d = self.c.len().saturating_sub(1);
        Poly::new(self.c.iter().enumerate().map(|(k, v)| v << (d - k)).collect())
    }

    /// Square-free part, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = gcd(self, &self.derivative()).primitive_part();
        self.primitive_part().div_exact(&g).expect("gcd divides").primitive_part()
    }

    /// Number of sign changes in the coefficient sequence, zeros skipped.
    pub fn sign_variations(&self) -> usize {
        let mut last = Sign::NoSign;
        let mut count = 0;
        for v in &self.c {
            let s = v.sign();
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in self.c.iter().enumerate().rev() {
            if v.is_zero() {
                continue;
            }
            let neg = v.is_negative();
            let mag = v.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.c.len() >= rhs.c.len() { (self, rhs) } else { (rhs, self) };
        let mut c = long.c.clone();
        for (a, b) in c.iter_mut().zip(&short.c) {
            *a += b;
        }
        Poly::new(c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.c.len().max(rhs.c.len());
        let mut c = self.c.clone();
        c.resize(n, BigInt::zero());
        for (a, b) in c.iter_mut().zip(&rhs.c) {
            *a -= b;
        }
        Poly::new(c)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { c: self.c.iter().map(|v| -v).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Modular gcd

/// The largest primes below `2^31`, descending. Products of two residues
/// fit in a `u64`.
fn primes_below_2_31() -> impl Iterator<Item = u64> {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES
        .get_or_init(|| {
            let is_prime = |p: u64| (3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
            ((1u64 << 30)..(1u64 << 31)).rev().filter(|&p| p % 2 == 1 && is_prime(p)).take(4000).collect()
        })
        .iter()
        .copied()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn reduce_mod(a: &Poly, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a.c.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Monic gcd in `F_p[x]`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let t = a.last().unwrap() * inv % p;
            let off = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                a[off + j] = (a[off + j] + p - t * bj % p) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = pow_mod(lc, p - 2, p);
        for v in a.iter_mut() {
            *v = *v * inv % p;
        }
    }
    a
}

fn symmetric_lift(c: &[BigInt], modulus: &BigInt) -> Poly {
    let half = modulus >> 1;
    Poly::new(c.iter().map(|v| if v > &half { v - modulus } else { v.clone() }).collect())
}

/// Gcd in `Z[x]`, primitive part normalised to a positive leading
/// coefficient and multiplied by the gcd of the contents.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive_part().scale(&b.content());
    }
    if b.is_zero() {
        return a.primitive_part().scale(&a.content());
    }
    let cont = a.content().gcd(&b.content());
    let (a, b) = (a.primitive_part(), b.primitive_part());
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return Poly::constant(cont);
    }
    let gamma = a.lc().gcd(&b.lc());
    let mut best_deg = a.degree().unwrap().min(b.degree().unwrap());
    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    let mut last_lift: Option<Poly> = None;
    for p in primes_below_2_31() {
        let pb = BigInt::from(p);
        if (a.lc() % &pb).is_zero() || (b.lc() % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce_mod(&a, p), reduce_mod(&b, p), p);
        let deg = g.len() - 1;
        if deg == 0 {
            return Poly::constant(cont);
        }
        if deg > best_deg {
            continue;
        }
        let gm = gamma.mod_floor(&pb).to_u64().unwrap();
        let g: Vec<BigInt> = g.iter().map(|v| BigInt::from(v * gm % p)).collect();
        if deg < best_deg || acc.is_none() {
            best_deg = deg;
            acc = Some((g, pb));
            last_lift = None;
        } else {
            let (h, m) = acc.take().unwrap();
            let m_inv = BigInt::from(pow_mod((&m % &pb).to_u64().unwrap(), p - 2, p));
            let combined: Vec<BigInt> = h
                .iter()
                .zip(&g)
                .map(|(hv, gv)| {
                    let t = ((gv - hv) * &m_inv).mod_floor(&pb);
                    hv + &m * t
                })
                .collect();
            acc = Some((combined, m * pb));
        }
        let (h, m) = acc.as_ref().unwrap();
        let lift = symmetric_lift(h, m);
        if last_lift.as_ref() == Some(&lift) {
            let cand = lift.primitive_part();
            if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return cand.scale(&cont);
            }
        }
        last_lift = Some(lift);
    }
    unreachable!("ran out of primes")
}

/// Least common multiple in `Z[x]` (contents included), with a positive
/// leading coefficient.
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = gcd(a, b);
    let l = a * &b.div_exact(&g).expect("gcd divides");
    if l.lc().is_negative() {
        -l
    } else {
        l
    }
}

// ---------------------------------------------------------------------------
// Fraction-free determinant

/// Determinant of a square matrix over `Z[x]` by Bareiss elimination.
pub fn det_bareiss(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

// ---------------------------------------------------------------------------
// Real roots

/// A real root of an integer polynomial, held as an isolating interval with
/// dyadic endpoints `lo / 2^bits < root < hi / 2^bits` (or an exact root).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u64,
    pub exact: bool,
}

impl RootInterval {
    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.bits as usize)
    }

    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.bits as usize)
    }

    pub fn midpoint_f64(&self) -> f64 {
        let s = (&self.lo + &self.hi).to_f64().unwrap();
        s / 2f64.powi(self.bits as i32 + 1)
    }

    pub fn width_bits(&self) -> u64 {
        if self.exact {
            return u64::MAX;
        }
        self.bits - (&self.hi - &self.lo).bits().saturating_sub(1)
    }
}

/// Isolates the roots of a square-free `f` in the open interval `(0, 1)`.
/// Returned intervals are disjoint and sorted.
pub fn isolate_roots_unit(f: &Poly) -> Vec<RootInterval> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = f.unshift(f.valuation());
    isolate_rec(&f, BigInt::zero(), 0, &mut out);
    out.sort_by(|a, b| {
        let (x, y) = (a.lo_rational(), b.lo_rational());
        x.cmp(&y)
    });
    out
}

/// `g(x) = f((c + x) / 2^k)` scaled; counts roots of `g` in `(0, 1)`.
fn isolate_rec(g: &Poly, c: BigInt, k: u64, out: &mut Vec<RootInterval>) {
    // Roots in (0,1) of g correspond to positive roots of (x+1)^d g(1/(x+1)).
    let v = g.reverse().taylor_shift_one().sign_variations();
    if v == 0 {
        return;
    }
    if v == 1 {
        out.push(RootInterval { lo: c.clone(), hi: c + 1, bits: k, exact: false });
        return;
    }
    let left = g.halve_argument();
    let mut right = left.taylor_shift_one();
    let c2: BigInt = c << 1usize;
    if right.coeff(0).is_zero() {
        // Exact root at the midpoint.
        let mid: BigInt = &c2 + 1;
        out.push(RootInterval { lo: mid.clone(), hi: mid, bits: k + 1, exact: true });
        right = right.unshift(1);
    }
    isolate_rec(&left, c2.clone(), k + 1, out);
    isolate_rec(&right, c2 + 1, k + 1, out);
}

/// Bisects an isolating interval of a square-free `f` until it is narrower
/// than `2^-bits`, using exact sign evaluation at dyadic points.
pub fn refine_root(f: &Poly, root: &RootInterval, bits: u64) -> RootInterval {
    if root.exact {
        return root.clone();
    }
    let mut r = root.clone();
    let sign_at = |num: &BigInt, b: u64| f.eval_dyadic_scaled(num, b).sign();
    let s_lo = sign_at(&r.lo, r.bits);
    while r.bits < bits {
        let lo: BigInt = &r.lo << 1usize;
        let hi: BigInt = &r.hi << 1usize;
        let mid: BigInt = &lo + 1;
        let b = r.bits + 1;
        let s = sign_at(&mid, b);
        if s == Sign::NoSign {
            return RootInterval { lo: mid.clone(), hi: mid, bits: b, exact: true };
        }
        r = if s == s_lo {
            RootInterval { lo: mid, hi, bits: b, exact: false }
        } else {
            RootInterval { lo, hi: mid, bits: b, exact: false }
        };
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn ring_arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[1, -1]);
        assert_eq!(&a * &b, p(&[1, 0, -1]));
        assert_eq!(&a + &b, p(&[2]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[5, 0, 3]).derivative(), p(&[0, 6]));
        assert_eq!(p(&[1, 2, 3]).to_string(), "3*x^2 + 2*x + 1");
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 0, 1]);
        assert_eq!(a.div_exact(&p(&[-1, 1])), Some(p(&[1, 1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[2])), Some(p(&[1, 2])));
        assert_eq!(p(&[1, 4]).div_exact(&p(&[0, 2])), None);
    }

    #[test]
    fn gcd_examples() {
        let f = p(&[1, 2, 1]);
        let g = p(&[-1, 0, 1]);
        assert_eq!(gcd(&f, &g), p(&[1, 1]));
        assert_eq!(gcd(&p(&[6, 6]), &p(&[4, 4])), p(&[2, 2]));
        assert_eq!(gcd(&p(&[1, 1]), &p(&[2, 1])), Poly::one());
        let h = p(&[3, -7, 0, 11]);
        let a = &(&h * &p(&[5, 0, 2])) * &p(&[1, 1]);
        let b = &h * &p(&[-9, 4, 4]);
        assert_eq!(gcd(&a, &b), h);
        assert_eq!(p(&[0, 0, 1, 1]).squarefree_part(), p(&[0, 1, 1]));
    }

    #[test]
    fn gcd_with_large_coefficients() {
        let big = BigInt::from(10).pow(40u32) + BigInt::from(7);
        let h = Poly::new(vec![big.clone(), BigInt::from(-3), big.clone() * 5]);
        let a = &h * &p(&[1, 0, 0, 1]);
        let b = &h * &p(&[2, 1]);
        assert_eq!(gcd(&a, &b), h);
    }

    #[test]
    fn bareiss_determinant() {
        let m = vec![vec![p(&[1, 1]), p(&[2])], vec![p(&[0, 1]), p(&[1, -1])]];
        // (1+x)(1-x) - 2x
        assert_eq!(det_bareiss(m), p(&[1, -2, -1]));
        let m = vec![vec![p(&[0]), p(&[1]), p(&[2])], vec![p(&[1]), p(&[0]), p(&[3])], vec![p(&[4]), p(&[5]), p(&[6])]];
        assert_eq!(det_bareiss(m), p(&[16]));
    }

    #[test]
    fn root_isolation() {
        // 1 - 6x + x^2 has its root 3 - 2*sqrt(2) in (0,1).
        let f = p(&[1, -6, 1]);
        let roots = isolate_roots_unit(&f);
        assert_eq!(roots.len(), 1);
        let r = refine_root(&f, &roots[0], 200);
        let want = 3.0 - 2.0 * 2f64.sqrt();
        assert!((r.midpoint_f64() - want).abs() < 1e-15);
        // (2x - 1)(3x - 1)(4x - 3): an exact dyadic root and two others.
        let g = &(&p(&[-1, 2]) * &p(&[-1, 3])) * &p(&[-3, 4]);
        let roots = isolate_roots_unit(&g);
        let mids: Vec<f64> = roots.iter().map(|r| refine_root(&g, r, 60).midpoint_f64()).collect();
        assert_eq!(mids.len(), 3);
        for (m, w) in mids.iter().zip([1.0 / 3.0, 0.5, 0.75]) {
            assert!((m - w).abs() < 1e-15, "{m} vs {w}");
        }
        assert!(isolate_roots_unit(&p(&[1, 1])).is_empty());
    }
}
