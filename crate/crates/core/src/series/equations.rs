//! The printed algebraic equations, differential equation and recurrence,
//! entered once. Everything downstream builds on these transcriptions.

use super::BivarPoly;
use crate::poly::Poly;

/// `sum of c * x^e` over the listed terms.
fn terms(t: &[(i64, usize)]) -> Poly {
    t.iter().fold(Poly::zero(), |acc, &(c, e)| &acc + &Poly::monomial(c, e))
}

fn x_minus_1() -> Poly {
    Poly::from_i64s(&[-1, 1])
}

fn x_pow(k: usize) -> Poly {
    Poly::x_pow(k)
}

/// Zigzag stacks: `x^2 (x-1) Z^3 + 2x Z^2 - (x+1) Z + 1 = 0`.
pub fn build_eq_z() -> BivarPoly {
    BivarPoly::new(vec![Poly::one(), Poly::from_i64s(&[-1, -1]), Poly::from_i64s(&[0, 2]), &x_pow(2) * &x_minus_1()])
}

/// The quintic satisfied by the m-reduced zigzag stack series `Z_m`.
pub fn build_eq_zm(m: usize) -> BivarPoly {
    assert!(m >= 2);
    let xm1 = x_minus_1();
    let a0 = &xm1 * &terms(&[(1, m), (-2, 1), (1, 0)]).pow(2);
    let a1 = terms(&[
        (-2, 3 * m + 1),
        (1, 3 * m),
        (12, 2 * m + 2),
        (-16, 2 * m + 1),
        (7, 2 * m),
        (-18, m + 3),
        (36, m + 2),
        (-28, m + 1),
        (7, m),
        (4, 4),
        (-10, 3),
        (12, 2),
        (-6, 1),
        (1, 0),
    ]);
    let a2 = &x_pow(m)
        * &terms(&[
            (2, 3 * m + 1),
            (-15, 2 * m + 2),
            (14, 2 * m + 1),
            (-5, 2 * m),
            (33, m + 3),
            (-60, m + 2),
            (47, m + 1),
            (-14, m),
            (-16, 4),
            (39, 3),
            (-45, 2),
            (25, 1),
            (-5, 0),
        ]);
    let a3 = &(&x_pow(2 * m) * &xm1)
        * &terms(&[(7, 2 * m + 1), (-28, m + 2), (22, m + 1), (-8, m), (24, 3), (-36, 2), (27, 1), (-8, 0)]);
    let a4 = &(&x_pow(3 * m) * &xm1.pow(2)) * &terms(&[(9, m + 1), (-16, 2), (11, 1), (-4, 0)]);
    let a5 = &Poly::monomial(4, 4 * m + 1) * &xm1.pow(3);
    BivarPoly::new(vec![a0, a1, a2, a3, a4, a5])
}

/// The quintic satisfied by the m-regular linear stack series `R_m`.
pub fn build_eq_rm(m: usize) -> BivarPoly {
    assert!(m >= 2);
    let xm1 = x_minus_1();
    let xm_1 = terms(&[(1, m), (-1, 0)]);
    let c0 = &xm1 * &xm_1.pow(3);
    let c1 =
        &xm_1.pow(2) * &terms(&[(1, 2 * m + 1), (-2, m + 2), (-1, m + 1), (1, m), (-3, 3), (8, 2), (-3, 1), (-1, 0)]);
    let c2 = &(&(&Poly::monomial(-1, 1) * &xm1) * &xm_1)
        * &terms(&[(5, 2 * m + 1), (-6, m + 2), (-9, m + 1), (5, m), (-3, 3), (12, 2), (1, 1), (-5, 0)]);
    let c3 = &(&(&x_pow(2) * &xm1.pow(2)) * &xm_1) * &terms(&[(11, m + 1), (-8, 2), (-11, 1), (8, 0)]);
    let c4 = &(&x_pow(3) * &xm1.pow(3)) * &terms(&[(-11, m + 1), (4, 2), (11, 1), (-4, 0)]);
    let c5 = &Poly::monomial(4, 5) * &xm1.pow(4);
    BivarPoly::new(vec![c0, c1, c2, c3, c4, c5])
}

/// Extended RNA secondary structures, in the series `S` with `S(0) = 0`,
/// written as `RHS(S) - S = 0`.
pub fn build_eq_extended_rna() -> BivarPoly {
    BivarPoly::new(vec![
        terms(&[(1, 1), (-2, 2), (1, 3)]),
        terms(&[(-1, 0), (3, 1), (-7, 2), (7, 3), (-2, 4)]),
        terms(&[(5, 1), (-10, 2), (14, 3), (-9, 4), (2, 5)]),
        terms(&[(-8, 2), (11, 3), (-14, 4), (7, 5)]),
        terms(&[(4, 3), (-7, 4), (9, 5)]),
        terms(&[(4, 5)]),
    ])
}

/// Product of two polynomials in `Z` given by their `Z`-coefficients.
fn zmul(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(p * q);
        }
    }
    out
}

/// `1 - 2x + x^m - 2 x^m (1-x) Z`, the recurring denominator factor of the
/// closed forms below.
fn closed_form_den(m: usize) -> Vec<Poly> {
    let one_minus_x = Poly::from_i64s(&[1, -1]);
    vec![terms(&[(1, 0), (-2, 1), (1, m)]), &Poly::monomial(-2, m) * &one_minus_x]
}

/// Closed form of `T_2` as numerator and denominator polynomials in `Z_m`.
pub fn closed_form_t2(m: usize) -> (Vec<Poly>, Vec<Poly>) {
    let one_minus_x = Poly::from_i64s(&[1, -1]);
    let f1 = vec![terms(&[(1, 0), (-1, m - 1)]), &x_pow(m - 1) * &one_minus_x];
    let f2 = vec![terms(&[(1, 0), (-2, 1), (1, m)]), &Poly::monomial(-1, m) * &one_minus_x];
    let den = zmul(std::slice::from_ref(&one_minus_x), &closed_form_den(m));
    (zmul(&f1, &f2), den)
}

/// Closed form of `T_5`: `x^(m-1)` times that of `T_2`.
pub fn closed_form_t5(m: usize) -> (Vec<Poly>, Vec<Poly>) {
    let (num, den) = closed_form_t2(m);
    (num.iter().map(|p| p.shift(m - 1)).collect(), den)
}

/// Closed form of `T_3` as numerator and denominator polynomials in `Z_m`.
pub fn closed_form_t3(m: usize) -> (Vec<Poly>, Vec<Poly>) {
    let xm1 = x_minus_1();
    let q = terms(&[(1, m), (-2, 1), (1, 0)]);
    let z0 = &terms(&[(1, 0), (-1, m)]) * &q.pow(2);
    let z1 = &(&x_pow(m) * &q) * &terms(&[(1, 2 * m), (-6, m + 1), (4, m), (2, 2), (2, 1), (-3, 0)]);
    let z2 = &(&x_pow(2 * m) * &xm1) * &terms(&[(3, 2 * m), (-13, m + 1), (7, m), (9, 2), (-5, 1), (-1, 0)]);
    let z3 = &(&Poly::monomial(3, 3 * m) * &xm1.pow(2)) * &q;
    let z4 = &x_pow(4 * m) * &xm1.pow(3);
    let num: Vec<Poly> = [z0, z1, z2, z3, z4].iter().map(|p| p.shift(m - 2)).collect();
    let one_minus_x = Poly::from_i64s(&[1, -1]);
    let f = vec![Poly::one(), Poly::monomial(-1, m)];
    let d = closed_form_den(m);
    let den = zmul(&zmul(&[one_minus_x], &f), &zmul(&d, &d));
    (num, den)
}

/// The printed second-order equation for the zigzag series, as
/// `[q_0, q_1, q_2]` (coefficients of `Z, Z', Z''`) and the inhomogeneous
/// term, so that `q_2 Z'' + q_1 Z' + q_0 Z + inh = 0`.
pub fn printed_z_ode() -> (Vec<Poly>, Poly) {
    let q2 = &(&(&x_pow(2) * &terms(&[(23, 3), (-26, 2), (23, 1), (-4, 0)])) * &terms(&[(4, 2), (1, 1), (-1, 0)]))
        * &x_minus_1();
    let q1 = &x_pow(1) * &terms(&[(368, 6), (-433, 5), (108, 4), (260, 3), (-258, 2), (93, 1), (-10, 0)]);
    let q0 = terms(&[(184, 6), (-87, 5), (-117, 4), (217, 3), (-129, 2), (30, 1), (-2, 0)]);
    let inh = &(&Poly::constant(-2) * &terms(&[(25, 2), (-8, 1), (1, 0)])) * &x_minus_1();
    (vec![q0, q1, q2], inh)
}

/// The printed recurrence `sum_{i=0}^{6} p_i(n) z(n+i) = 0`, each `p_i` a
/// polynomial in `n`.
pub fn printed_z_recurrence() -> Vec<Poly> {
    [
        [184, 276, 92],
        [-520, -606, -173],
        [347, 480, 124],
        [937, 210, -10],
        [-1881, -678, -60],
        [1115, 372, 31],
        [-182, -54, -4],
    ]
    .iter()
    .map(|c| Poly::from_i64s(c))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    #[test]
    fn constant_terms_give_a_simple_branch_at_one() {
        let one = BigRational::one();
        let zero = BigRational::zero();
        for m in 2..=8 {
            for eq in [build_eq_zm(m), build_eq_rm(m)] {
                assert!(eq.eval_rational(&zero, &one).is_zero());
                let slope: BigInt = eq.derivative_z_coeffs().iter().map(|q| q.coeff(0)).sum();
                assert!(slope == BigInt::one() || slope == -BigInt::one(), "m={m}");
            }
        }
    }

    #[test]
    fn printed_factors_present() {
        for m in 2..=6 {
            let c0 = build_eq_rm(m).coeff(0).clone();
            let xm_1 = &Poly::x_pow(m) - &Poly::one();
            assert!(c0.div_exact(&xm_1.pow(3)).is_some());
            let a5 = build_eq_zm(m).coeff(5).clone();
            assert_eq!(a5.valuation(), 4 * m + 1);
        }
    }
}
