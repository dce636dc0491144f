//! From algebraic equations to linear differential equations with
//! polynomial coefficients, and from those to P-recurrences.
//!
//! The algebraic series `Y` is handled through the quotient ring
//! `Q(x)[Y] / (P)`: `Y' = -P_x / P_Z` is an element of it, so every
//! derivative of `Y` is too, and since the ring has dimension `deg_Z P`
//! over `Q(x)` a linear relation among `1, Y, Y', ...` must appear.

mod ratfunc;
mod recurrence;

use thiserror::Error;

use crate::poly::Poly;
use crate::series::{BivarPoly, Series, SeriesError};

pub use ratfunc::{clear_denominators, remove_common_factor, RatFunc};
pub use recurrence::{
    certify_window, cross_annihilate, eval_recurrence, extend_by_recurrence, ode_to_recurrence, printed_z_prec,
    recurrence_for, verify_printed_ode_z, verify_printed_recurrence_z, CrossCheck, OdeCheck, PRecurrence,
    RecurrenceReport, RecurrenceSource,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HolonomicError {
    #[error("dP/dZ is not invertible modulo P; the equation is not square-free in Z")]
    NotSquarefree,
    #[error("no linear relation among the first {0} derivatives")]
    NoRelation(usize),
    #[error("leading recurrence coefficient vanishes at n = {0}")]
    LeadingZero(usize),
    #[error("recurrence needs {need} initial terms, got {have}")]
    NotEnoughTerms { need: usize, have: usize },
    #[error("recurrence fails to reproduce the series at index {0}")]
    Mismatch(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `q_r(x) Y^(r) + ... + q_1(x) Y' + q_0(x) Y + inh(x) = 0` with integer
/// polynomial coefficients sharing no common factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOde {
    pub q: Vec<Poly>,
    pub inh: Poly,
}

impl LinearOde {
    pub fn order(&self) -> usize {
        self.q.len() - 1
    }

    /// Applies the operator to a truncated series. Differentiation lowers
    /// the order, so the result is exact through `x^(N - r)`.
    pub fn apply(&self, y: &Series) -> Series {
        let out_order = y.order() - self.order();
        let mut acc = Series::from_poly(&self.inh, out_order);
        let mut dy = y.clone();
        for (k, q) in self.q.iter().enumerate() {
            if k > 0 {
                dy = dy.derivative();
            }
            let term = &Series::from_poly(q, out_order) * &dy.truncate(out_order);
            acc = &acc + &term;
        }
        acc
    }
}

/// An element `sum u_j Y^j` of `Q(x)[Y] / (P)`, always of length `deg_Z P`.
type Elem = Vec<RatFunc>;

struct Quotient {
    d: usize,
    /// `-a_j / a_d` for `j < d`: the expansion of `Y^d`.
    top: Vec<RatFunc>,
}

impl Quotient {
    fn new(p: &BivarPoly) -> Self {
        let d = p.degree_z();
        let lead = RatFunc::from_poly(p.coeff(d).clone());
        let top = (0..d).map(|j| RatFunc::from_poly(p.coeff(j).clone()).div(&lead).neg()).collect();
        Quotient { d, top }
    }

    /// Reduces a polynomial in `Y` of any degree.
    fn reduce(&self, mut v: Vec<RatFunc>) -> Elem {
        let d = self.d;
        while v.len() > d {
            let t = v.pop().unwrap();
            if t.is_zero() {
                continue;
            }
            let base = v.len() - d;
            for (j, c) in self.top.iter().enumerate() {
                v[base + j] = v[base + j].add(&t.mul(c));
            }
        }
        v.resize(d, RatFunc::zero());
        v
    }

    fn mul(&self, u: &Elem, w: &Elem) -> Elem {
        let mut out = vec![RatFunc::zero(); u.len() + w.len() - 1];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in w.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        self.reduce(out)
    }

    /// `d/dx` of an element, given `Y'`.
    fn derive(&self, u: &Elem, yprime: &Elem) -> Elem {
        let direct: Elem = u.iter().map(RatFunc::derivative).collect();
        let dy: Vec<RatFunc> = u.iter().enumerate().skip(1).map(|(j, c)| c.scale(&(j as i64).into())).collect();
        let mut chain = if dy.is_empty() { vec![RatFunc::zero(); self.d] } else { self.mul(&self.reduce(dy), yprime) };
        for (c, dc) in chain.iter_mut().zip(direct) {
            *c = c.add(&dc);
        }
        chain
    }
}

fn trim(mut v: Vec<RatFunc>) -> Vec<RatFunc> {
    while v.last().is_some_and(RatFunc::is_zero) {
        v.pop();
    }
    v
}

/// Quotient and remainder of polynomials in `Y` over `Q(x)`.
fn div_rem_y(a: &[RatFunc], b: &[RatFunc]) -> (Vec<RatFunc>, Vec<RatFunc>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().unwrap().inv();
    let mut q = vec![RatFunc::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let t = r.last().unwrap().mul(&lead_inv);
        for (j, c) in b.iter().enumerate() {
            r[k + j] = r[k + j].sub(&t.mul(c));
        }
        q[k] = t;
        r.pop();
        r = trim(r);
    }
    (q, r)
}

fn sub_y(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    let n = a.len().max(b.len());
    let z = RatFunc::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z).sub(b.get(i).unwrap_or(&z))).collect())
}

fn mul_y(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![RatFunc::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(out)
}

/// Inverse of `b` modulo `a` in `Q(x)[Y]` by the extended Euclidean
/// algorithm; `None` when `gcd(a, b)` is not a unit.
fn inverse_mod(b: &[RatFunc], a: &[RatFunc]) -> Option<Vec<RatFunc>> {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut t0, mut t1) = (Vec::new(), vec![RatFunc::one()]);
    while r1.len() > 1 {
        let (q, r) = div_rem_y(&r0, &r1);
        let t = sub_y(&t0, &mul_y(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    let c = r1.first()?.inv();
    Some(t1.iter().map(|v| v.mul(&c)).collect())
}

/// A nonzero vector in the kernel of the matrix with the given columns,
/// with the last free column set to one; `None` if the columns are
/// independent. Elimination is fraction-free over `Z[x]`, dividing each
/// updated row by the gcd of its entries.
fn kernel(cols: &[Elem]) -> Option<Vec<RatFunc>> {
    let ncols = cols.len();
    let nrows = cols[0].len();
    // Scaling rows keeps the kernel; scaling columns would not.
    let mut m: Vec<Vec<Poly>> =
        (0..nrows).map(|i| clear_denominators(&cols.iter().map(|c| c[i].clone()).collect::<Vec<_>>())).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..nrows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, pr);
        for i in row + 1..nrows {
            if m[i][col].is_zero() {
                continue;
            }
            let (a, b) = (m[row][col].clone(), m[i][col].clone());
            let updated: Vec<Poly> = (0..ncols).map(|j| &(&a * &m[i][j]) - &(&b * &m[row][j])).collect();
            m[i] = remove_common_factor(updated);
        }
        pivots.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    let free = (0..ncols).rev().find(|c| !pivots.contains(c))?;
    let mut lambda = vec![RatFunc::zero(); ncols];
    lambda[free] = RatFunc::one();
    for (r, &pc) in pivots.iter().enumerate().rev() {
        let mut acc = RatFunc::zero();
        for j in pc + 1..ncols {
            if !lambda[j].is_zero() && !m[r][j].is_zero() {
                acc = acc.add(&lambda[j].mul_poly(&m[r][j]));
            }
        }
        lambda[pc] = acc.neg().div(&RatFunc::from_poly(m[r][pc].clone()));
    }
    Some(lambda)
}

/// Finds the lowest-order linear ODE satisfied by every root of `P`.
///
/// For `r = 1, 2, ...` it first looks for a homogeneous relation among
/// `Y, ..., Y^(r)` and then for one among `1, Y, ..., Y^(r)`.
pub fn algebraic_to_ode(p: &BivarPoly, max_order: usize) -> Result<LinearOde, HolonomicError> {
    let qr = Quotient::new(p);
    let d = qr.d;
    let as_elem = |v: &[Poly]| -> Elem { qr.reduce(v.iter().cloned().map(RatFunc::from_poly).collect()) };
    let px = as_elem(&p.derivative_x_coeffs());
    let pz: Vec<RatFunc> = p.derivative_z_coeffs().into_iter().map(RatFunc::from_poly).collect();
    let pfull: Vec<RatFunc> = p.coeffs().iter().cloned().map(RatFunc::from_poly).collect();
    let pz_inv = inverse_mod(&pz, &pfull).ok_or(HolonomicError::NotSquarefree)?;
    let pz_inv = qr.reduce(pz_inv);
    let yprime: Elem = qr.mul(&px, &pz_inv).iter().map(RatFunc::neg).collect();

    let mut one = vec![RatFunc::zero(); d];
    one[0] = RatFunc::one();
    let mut y = vec![RatFunc::zero(); d];
    if d > 1 {
        y[1] = RatFunc::one();
    } else {
        // Degree one in Z: Y itself is a rational function.
        y = qr.reduce(vec![RatFunc::zero(), RatFunc::one()]);
    }
    let mut derivs: Vec<Elem> = vec![y];
    for r in 1..=max_order {
        let next = qr.derive(derivs.last().unwrap(), &yprime);
        derivs.push(next);
        if let Some(lambda) = kernel(&derivs).filter(|l| !l[r].is_zero()) {
            return Ok(finish(lambda, None));
        }
        let mut cols = vec![one.clone()];
        cols.extend(derivs.iter().cloned());
        if let Some(lambda) = kernel(&cols).filter(|l| !l[r + 1].is_zero()) {
            let inh = lambda[0].clone();
            return Ok(finish(lambda[1..].to_vec(), Some(inh)));
        }
    }
    Err(HolonomicError::NoRelation(max_order))
}

fn finish(lambda: Vec<RatFunc>, inh: Option<RatFunc>) -> LinearOde {
    let mut all = lambda;
    all.push(inh.unwrap_or_default());
    let mut polys = clear_denominators(&all);
    let inh = polys.pop().unwrap();
    let lead_negative = polys.last().unwrap().lc() < num_bigint::BigInt::from(0);
    let fix = |p: Poly| if lead_negative { -p } else { p };
    LinearOde { q: polys.into_iter().map(fix).collect(), inh: fix(inh) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::equations::{build_eq_z, build_eq_zm};
    use crate::series::{series_z, series_zm};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn geometric_series_ode() {
        // Z - 1 - xZ = 0
        let eq = BivarPoly::new(vec![p(&[-1]), p(&[1, -1])]);
        let ode = algebraic_to_ode(&eq, 3).unwrap();
        assert_eq!(ode.q, vec![p(&[1]), p(&[-1, 1])]);
        assert!(ode.inh.is_zero());
    }

    #[test]
    fn catalan_ode_annihilates_series() {
        let eq = BivarPoly::new(vec![p(&[1]), p(&[-1]), p(&[0, 1])]);
        let ode = algebraic_to_ode(&eq, 3).unwrap();
        assert_eq!(ode.order(), 1);
        let y = crate::series::solve_algebraic(&eq, &num_rational::BigRational::from_integer(1.into()), 30).unwrap();
        assert!(ode.apply(&y).is_zero());
    }

    #[test]
    fn zigzag_ode_is_second_order_inhomogeneous() {
        let ode = algebraic_to_ode(&build_eq_z(), 4).unwrap();
        assert_eq!(ode.order(), 2);
        assert!(!ode.inh.is_zero());
        assert!(ode.apply(&series_z(40).unwrap()).is_zero());
    }

    #[test]
    fn reduced_ode_annihilates_series() {
        let ode = algebraic_to_ode(&build_eq_zm(3), 6).unwrap();
        assert!(ode.order() <= 4);
        assert!(ode.apply(&series_zm(3, 60).unwrap()).is_zero());
    }
}
