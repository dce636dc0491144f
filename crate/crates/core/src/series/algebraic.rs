use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Series, SeriesError};
use crate::poly::{det_bareiss, Poly};

/// `P(x, Z) = a_0(x) + a_1(x) Z + ... + a_d(x) Z^d` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarPoly {
    a: Vec<Poly>,
}

impl BivarPoly {
    /// Trailing zero coefficients are dropped; the result must have `d >= 1`.
    pub fn new(mut a: Vec<Poly>) -> Self {
        while a.last().is_some_and(Poly::is_zero) {
            a.pop();
        }
        assert!(a.len() >= 2, "an algebraic equation needs degree at least one in Z");
        BivarPoly { a }
    }

    pub fn degree_z(&self) -> usize {
        self.a.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.a
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.a[k]
    }

    /// Largest degree in `x` over all coefficients.
    pub fn degree_x(&self) -> usize {
        self.a.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// `dP/dZ`; may have degree zero in `Z`, so returned as a coefficient list.
    pub fn derivative_z_coeffs(&self) -> Vec<Poly> {
        self.a.iter().enumerate().skip(1).map(|(k, p)| p.scale(&BigInt::from(k))).collect()
    }

    pub fn derivative_x_coeffs(&self) -> Vec<Poly> {
        self.a.iter().map(Poly::derivative).collect()
    }

    /// Substitutes a series for `Z` by Horner's rule.
    pub fn eval_series(&self, y: &Series) -> Series {
        eval_coeffs_series(&self.a, y)
    }

    pub fn eval_f64(&self, x: f64, z: f64) -> f64 {
        eval_coeffs_f64(&self.a, x, z)
    }

    pub fn eval_rational(&self, x: &BigRational, z: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for p in self.a.iter().rev() {
            acc = acc * z + p.eval_rational(x);
        }
        acc
    }

    /// `Res_Z(P, dP/dZ)`, the polynomial whose roots contain every `x` where
    /// two branches of `P` meet.
    pub fn discriminant_resultant(&self) -> Poly {
        resultant_z(&self.a, &self.derivative_z_coeffs())
    }
}

pub(crate) fn eval_coeffs_series(a: &[Poly], y: &Series) -> Series {
    let order = y.order();
    let mut acc = Series::zero(order);
    for p in a.iter().rev() {
        acc = &(&acc * y) + &Series::from_poly(p, order);
    }
    acc
}

pub(crate) fn eval_coeffs_f64(a: &[Poly], x: f64, z: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, p| acc * z + p.eval_f64(x))
}

/// Resultant in `Z` of two polynomials given by their `Z`-coefficients,
/// as the determinant of the Sylvester matrix.
pub fn resultant_z(f: &[Poly], g: &[Poly]) -> Poly {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return Poly::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Poly::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Poly::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    det_bareiss(rows)
}

/// The unique series `Y` with `Y(0) = c0` and `P(x, Y) = O(x^(order+1))`,
/// by Newton iteration `Y <- Y - P(x,Y) / P_Z(x,Y)` with doubling precision.
/// The residual is re-checked through `x^order` before returning.
pub fn solve_algebraic(p: &BivarPoly, c0: &BigRational, order: usize) -> Result<Series, SeriesError> {
    let x0 = BigRational::zero();
    if !p.eval_rational(&x0, c0).is_zero() {
        return Err(SeriesError::Branch(format!("P(0, {c0}) is not zero")));
    }
    let dz = p.derivative_z_coeffs();
    let mut slope = BigRational::zero();
    for q in dz.iter().rev() {
        slope = slope * c0 + q.eval_rational(&x0);
    }
    if slope.is_zero() {
        return Err(SeriesError::Branch(format!("dP/dZ vanishes at (0, {c0})")));
    }
    let mut y = Series::new(vec![c0.clone()], 0);
    let mut prec = 1usize;
    while prec < order + 1 {
        prec = (2 * prec).min(order + 1);
        let y_ext = Series::new(y.coeffs().to_vec(), prec - 1);
        let f = p.eval_series(&y_ext);
        let fz = eval_coeffs_series(&dz, &y_ext);
        y = &y_ext - &f.div(&fz)?;
    }
    let y = Series::new(y.coeffs().to_vec(), order);
    let res = p.eval_series(&y);
    if let Some(k) = res.first_nonzero() {
        return Err(SeriesError::Residual(k));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn catalan_branch() {
        // x Z^2 - Z + 1 = 0
        let eq = BivarPoly::new(vec![p(&[1]), p(&[-1]), p(&[0, 1])]);
        let y = solve_algebraic(&eq, &BigRational::one(), 10).unwrap();
        let want = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        let got: Vec<i64> = y.to_integers().unwrap().iter().map(|v| i64::try_from(v).unwrap()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn rational_branch_with_non_unit_slope() {
        // 2Z - 1 - x = 0, so Z = (1 + x)/2
        let eq = BivarPoly::new(vec![p(&[-1, -1]), p(&[2])]);
        let half = BigRational::new(1.into(), 2.into());
        let y = solve_algebraic(&eq, &half, 5).unwrap();
        assert_eq!(y.coeff(0), &half);
        assert_eq!(y.coeff(1), &half);
        assert!(y.coeffs()[2..].iter().all(Zero::is_zero));
    }

    #[test]
    fn branch_conditions_checked() {
        let eq = BivarPoly::new(vec![p(&[1]), p(&[-1]), p(&[0, 1])]);
        assert!(matches!(solve_algebraic(&eq, &BigRational::zero(), 4), Err(SeriesError::Branch(_))));
        // Z^2 - x: the slope vanishes at the origin.
        let eq = BivarPoly::new(vec![p(&[0, -1]), p(&[0]), p(&[1])]);
        assert!(matches!(solve_algebraic(&eq, &BigRational::zero(), 4), Err(SeriesError::Branch(_))));
    }

    #[test]
    fn quadratic_discriminant() {
        // x Z^2 - Z + 1: Res(P, P_Z) = -x (1 - 4x) up to sign conventions
        let eq = BivarPoly::new(vec![p(&[1]), p(&[-1]), p(&[0, 1])]);
        let d = eq.discriminant_resultant();
        assert_eq!(d.primitive_part(), p(&[0, -1, 4]));
    }
}
