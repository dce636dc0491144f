//! Dominant singularities of algebraic counting series and the constants
//! in `c_n ~ gamma * omega^n * n^(-3/2)`.
//!
//! Candidates are the real roots in `(0, 1]` of the discriminant and of the
//! leading coefficient, isolated exactly. The counting branch is followed
//! numerically from `x = 0`; the first candidate where it meets another
//! branch is the singularity, which is then refined exactly and polished
//! in fixed point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::fixed::Fixed;
use crate::holonomic::{extend_by_recurrence, HolonomicError, RecurrenceSource};
use crate::poly::{isolate_roots_unit, refine_root, Poly};
use crate::series::BivarPoly;

/// Fractional bits of the fixed-point stage, about 96 decimal digits.
pub const WORK_BITS: u64 = 320;

/// Relative distance below which two candidates cannot be told apart by
/// the floating-point tracker.
const RESOLUTION: f64 = 1e-9;

/// The tracker stops this far (relatively) before a candidate.
const APPROACH: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptError {
    #[error("the discriminant vanishes identically")]
    ZeroDiscriminant,
    #[error("no candidate singularity in (0, 1] is reached by the branch")]
    NoSingularity,
    #[error("candidates {0} and {1} are within tracking resolution")]
    Ambiguous(f64, f64),
    #[error("branch continuation failed near x = {0}")]
    Tracking(f64),
    #[error("the branch has a pole at x = {0}, not a square-root point")]
    Pole(f64),
    #[error("degenerate branch point: {0}")]
    Degenerate(&'static str),
    #[error("{0} coefficients given, at least {1} needed")]
    TooFewTerms(usize, usize),
    #[error("coefficient {0} is zero; ratios undefined")]
    ZeroCoefficient(usize),
    #[error(transparent)]
    Holonomic(#[from] HolonomicError),
}

/// The singular point `rho` with the double root `Z(rho)` of `P(rho, .)`.
#[derive(Debug, Clone)]
pub struct Singularity {
    pub rho: Fixed,
    pub z_at_rho: Fixed,
    /// `|P(rho, Z(rho))|` and `|P_Z(rho, Z(rho))|` at working precision.
    pub residual_p: Fixed,
    pub residual_pz: Fixed,
}

/// Candidate points with their exact polynomial and isolating interval.
struct Candidate {
    f: Poly,
    root: Option<crate::poly::RootInterval>,
    approx: f64,
}

fn strip_x_and_one(p: &Poly) -> (Poly, bool) {
    let mut g = p.squarefree_part();
    g = g.unshift(g.valuation());
    let x_minus_1 = Poly::from_i64s(&[-1, 1]);
    let mut at_one = false;
    while let Some(q) = g.div_exact(&x_minus_1) {
        g = q;
        at_one = true;
    }
    (g, at_one)
}

fn candidates(p: &BivarPoly) -> Result<Vec<Candidate>, AsymptError> {
    let disc = p.discriminant_resultant();
    if disc.is_zero() {
        return Err(AsymptError::ZeroDiscriminant);
    }
    let lead = p.coeff(p.degree_z());
    let (fd, one_d) = strip_x_and_one(&disc);
    let (fl, one_l) = strip_x_and_one(lead);
    // One square-free polynomial carrying both sets of roots.
    let f = (&fd * &fl).squarefree_part();
    let mut out: Vec<Candidate> = isolate_roots_unit(&f)
        .into_iter()
        .map(|r| {
            let r = refine_root(&f, &r, 64);
            Candidate { f: f.clone(), approx: r.midpoint_f64(), root: Some(r) }
        })
        .collect();
    if one_d || one_l {
        out.push(Candidate { f: Poly::from_i64s(&[-1, 1]), root: None, approx: 1.0 });
    }
    for w in out.windows(2) {
        if (w[1].approx - w[0].approx).abs() <= RESOLUTION * w[1].approx {
            return Err(AsymptError::Ambiguous(w[0].approx, w[1].approx));
        }
    }
    Ok(out)
}

struct Tracker<'a> {
    p: &'a BivarPoly,
    dz: Vec<Poly>,
    dx: Vec<Poly>,
}

fn horner_f64(a: &[Poly], x: f64, z: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, q| acc * z + q.eval_f64(x))
}

impl<'a> Tracker<'a> {
    fn new(p: &'a BivarPoly) -> Self {
        Tracker { p, dz: p.derivative_z_coeffs(), dx: p.derivative_x_coeffs() }
    }

    /// Newton on `P(x, .)`. Near a branch point `P_Z` is small and rounding
    /// noise in `P` limits the attainable accuracy, hence the loose test.
    fn newton(&self, x: f64, mut w: f64) -> Option<f64> {
        for _ in 0..30 {
            let fz = horner_f64(&self.dz, x, w);
            if fz == 0.0 || !fz.is_finite() {
                return None;
            }
            let d = self.p.eval_f64(x, w) / fz;
            w -= d;
            if d.abs() <= 1e-11 * (1.0 + w.abs()) {
                return Some(w);
            }
        }
        None
    }

    /// Follows the branch through `(x0, z0)` up to `x1` by Euler prediction
    /// and Newton correction, halving the step whenever the corrector moves
    /// too far from the prediction.
    fn track(&self, x0: f64, z0: f64, x1: f64) -> Result<f64, AsymptError> {
        let (mut x, mut z) = (x0, z0);
        let mut h = (x1 - x0) / 64.0;
        while x < x1 {
            h = h.min(x1 - x);
            let slope = -horner_f64(&self.dx, x, z) / horner_f64(&self.dz, x, z);
            let zp = z + h * slope;
            match self.newton(x + h, zp).filter(|w| (w - zp).abs() <= 1e-3 * (1.0 + z.abs())) {
                Some(w) => {
                    x += h;
                    z = w;
                    h *= 1.5;
                }
                None => {
                    h /= 2.0;
                    if h < 1e-17 * (1.0 + x) {
                        return Err(AsymptError::Tracking(x));
                    }
                }
            }
            if z.abs() > 1e12 {
                return Err(AsymptError::Pole(x));
            }
        }
        Ok(z)
    }

    /// Critical point of `P(x, .)` near `w`, by Newton on `P_Z`.
    fn critical_point(&self, x: f64, mut w: f64) -> Option<f64> {
        let dzz: Vec<Poly> = self.dz.iter().enumerate().skip(1).map(|(k, q)| q.scale(&BigInt::from(k))).collect();
        for _ in 0..60 {
            let fzz = horner_f64(&dzz, x, w);
            if fzz == 0.0 {
                return None;
            }
            let d = horner_f64(&self.dz, x, w) / fzz;
            w -= d;
            if d.abs() <= 1e-14 * (1.0 + w.abs()) {
                return Some(w);
            }
        }
        None
    }
}

/// Coefficients `a_k(x)` of `P` evaluated at a fixed-point `x`.
fn coeffs_at(a: &[Poly], x: &Fixed) -> Vec<Fixed> {
    a.iter().map(|q| Fixed::eval_poly(q, x)).collect()
}

fn horner_fixed(c: &[Fixed], z: &Fixed) -> Fixed {
    c.iter().rev().fold(Fixed::zero(z.bits()), |acc, v| acc.mul(z).add(v))
}

fn derivative_coeffs(c: &[Fixed]) -> Vec<Fixed> {
    c.iter().enumerate().skip(1).map(|(k, v)| v.mul_int(&BigInt::from(k))).collect()
}

/// Locates the dominant singularity of the branch of `P` through `(0, c0)`.
pub fn dominant_singularity(p: &BivarPoly, c0: &BigRational) -> Result<Singularity, AsymptError> {
    let cands = candidates(p)?;
    let tracker = Tracker::new(p);
    let (mut x, mut z) = (0.0, c0.to_f64().unwrap());
    for cand in &cands {
        let stop = cand.approx * (1.0 - APPROACH);
        z = tracker.track(x, z, stop)?;
        x = stop;
        let Some(w) = tracker.critical_point(cand.approx, z) else { continue };
        let scale = 1.0 + w.abs();
        let on_curve = p.eval_f64(cand.approx, w).abs() <= 1e-6 * scale;
        // Near a square-root point the branch is O(sqrt(APPROACH)) away.
        if !on_curve || (w - z).abs() > 1e-2 * scale {
            continue;
        }
        let Some(root) = &cand.root else {
            return Err(AsymptError::Degenerate("branch point at x = 1"));
        };
        return Ok(polish(p, &cand.f, root, w));
    }
    Err(AsymptError::NoSingularity)
}

fn polish(p: &BivarPoly, f: &Poly, root: &crate::poly::RootInterval, w: f64) -> Singularity {
    let bits = WORK_BITS;
    let r = refine_root(f, root, bits + 8);
    let rho = Fixed::from_dyadic(&r.lo, r.bits, bits);
    let a = coeffs_at(p.coeffs(), &rho);
    let az = derivative_coeffs(&a);
    let azz = derivative_coeffs(&az);
    let mut z = Fixed::from_f64(w, bits);
    let tol = Fixed::from_dyadic(&BigInt::from(1), bits - 16, bits);
    for _ in 0..40 {
        let d = horner_fixed(&az, &z).div(&horner_fixed(&azz, &z));
        z = z.sub(&d);
        if d.abs() <= tol {
            break;
        }
    }
    let residual_p = horner_fixed(&a, &z).abs();
    let residual_pz = horner_fixed(&az, &z).abs();
    Singularity { rho, z_at_rho: z, residual_p, residual_pz }
}

/// `gamma = C / (2 sqrt(pi))` where `Z ~ Z(rho) - C sqrt(1 - x/rho)` and
/// `C = sqrt(2 rho P_x / P_ZZ)` at the singular point.
pub fn subexp_constant(p: &BivarPoly, s: &Singularity) -> Result<Fixed, AsymptError> {
    let bits = s.rho.bits();
    let a = coeffs_at(p.coeffs(), &s.rho);
    let azz = derivative_coeffs(&derivative_coeffs(&a));
    let ax = coeffs_at(&p.derivative_x_coeffs(), &s.rho);
    let pzz = horner_fixed(&azz, &s.z_at_rho);
    let px = horner_fixed(&ax, &s.z_at_rho);
    let tiny = Fixed::from_dyadic(&BigInt::from(1), bits / 2, bits);
    if pzz.abs() <= tiny {
        return Err(AsymptError::Degenerate("P_ZZ vanishes at the branch point"));
    }
    if px.abs() <= tiny {
        return Err(AsymptError::Degenerate("P_x vanishes at the branch point"));
    }
    let t = s.rho.mul(&px).mul_int(&BigInt::from(2)).div(&pzz);
    if t.is_negative() {
        return Err(AsymptError::Degenerate("2 rho P_x / P_ZZ is negative"));
    }
    let c = t.sqrt();
    Ok(c.div(&Fixed::pi(bits).sqrt().mul_int(&BigInt::from(2))))
}

/// Estimates from the coefficients alone.
#[derive(Debug, Clone)]
pub struct Extrapolation {
    pub omega: Fixed,
    pub gamma: Fixed,
    /// Limit of `n (c_{n+1} / (omega c_n) - 1)`, which is the exponent.
    pub exponent: Fixed,
    /// Relative change of each estimate when the window moves back.
    pub omega_spread: f64,
    pub gamma_spread: f64,
    pub exponent_is_three_halves: bool,
    pub converged: bool,
}

pub const MIN_TERMS: usize = 100;
const RICHARDSON_ORDER: usize = 8;
const WINDOW_SHIFT: usize = 12;
const EXTRAP_BITS: u64 = 256;

/// Richardson extrapolation of `a_n = a + b/n + c/n^2 + ...` from the
/// values at `n = last - k, ..., last`:
/// `sum_j a_{N+j} (N+j)^k (-1)^(k+j) / (j! (k-j)!)`.
fn richardson(values: &dyn Fn(usize) -> Fixed, last: usize, k: usize) -> Fixed {
    let n0 = last - k;
    let mut acc = Fixed::zero(EXTRAP_BITS);
    let mut fact = vec![BigInt::from(1)];
    for i in 1..=k {
        let f = &fact[i - 1] * BigInt::from(i);
        fact.push(f);
    }
    for j in 0..=k {
        let n = BigInt::from(n0 + j);
        let mut w = values(n0 + j).mul_int(&n.pow(k as u32)).div_int(&(&fact[j] * &fact[k - j]));
        if (k + j) % 2 == 1 {
            w = w.neg();
        }
        acc = acc.add(&w);
    }
    acc
}

fn rel_diff(a: &Fixed, b: &Fixed) -> f64 {
    let (x, y) = (a.to_f64(), b.to_f64());
    if x == 0.0 {
        return (x - y).abs();
    }
    ((x - y) / x).abs()
}

/// Estimates `omega`, `gamma` and the exponent from exact coefficients,
/// assuming `c_n ~ gamma omega^n n^(-3/2) (1 + a/n + ...)`.
pub fn extrapolate_constants(c: &[BigInt]) -> Result<Extrapolation, AsymptError> {
    if c.len() < MIN_TERMS {
        return Err(AsymptError::TooFewTerms(c.len(), MIN_TERMS));
    }
    let last = c.len() - 2;
    let first = last - RICHARDSON_ORDER - WINDOW_SHIFT;
    if let Some(i) = (first..c.len()).find(|&i| c[i].is_zero()) {
        return Err(AsymptError::ZeroCoefficient(i));
    }
    let bits = EXTRAP_BITS;
    let one = Fixed::from_int(1, bits);
    let ratio = |n: usize| Fixed::from_rational(&BigRational::new(c[n + 1].clone(), c[n].clone()), bits);
    // c_{n+1}/c_n (1 + 1/n)^(3/2) = omega (1 + O(1/n^2)).
    let omega_n = |n: usize| {
        let t = one.add(&one.div_int(&BigInt::from(n)));
        ratio(n).mul(&t.mul(&t).mul(&t).sqrt())
    };
    let k = RICHARDSON_ORDER;
    let omega = richardson(&omega_n, last, k);
    let omega_back = richardson(&omega_n, last - WINDOW_SHIFT, k);

    // omega^n is formed directly: its integer part grows, so no precision
    // is lost the way a power of 1/omega would underflow.
    let omega_inv = omega.recip();
    let gamma_n = |n: usize| {
        let nn = Fixed::from_int(n, bits);
        let n32 = nn.mul(&nn).mul(&nn).sqrt();
        Fixed::from_int(c[n].clone(), bits).mul(&n32).div(&omega.powi(n as u64))
    };
    let g_last = last + 1;
    let gamma = richardson(&gamma_n, g_last, k);
    let gamma_back = richardson(&gamma_n, g_last - WINDOW_SHIFT, k);

    let alpha_n = |n: usize| ratio(n).mul(&omega_inv).sub(&one).mul_int(&BigInt::from(n));
    let exponent = richardson(&alpha_n, last, k);
    let omega_spread = rel_diff(&omega, &omega_back);
    let gamma_spread = rel_diff(&gamma, &gamma_back);
    let exponent_is_three_halves = (exponent.to_f64() + 1.5).abs() < 1e-2;
    let converged = omega_spread < 1e-6 && gamma_spread < 1e-3 && gamma.to_f64().is_finite();
    Ok(Extrapolation { omega, gamma, exponent, omega_spread, gamma_spread, exponent_is_three_halves, converged })
}

/// Implicit-function constants with the extrapolated cross-check.
#[derive(Debug, Clone)]
pub struct SingularityReport {
    pub rho: Fixed,
    pub omega: Fixed,
    pub z_at_rho: Fixed,
    pub gamma: Fixed,
    /// Always `-3/2`: only square-root branch points are accepted.
    pub exponent: (i32, i32),
    pub extrapolation: Option<Extrapolation>,
    pub omega_discrepancy: Option<f64>,
    pub gamma_discrepancy: Option<f64>,
    /// Set when the two methods disagree beyond the tolerances below.
    pub diverged: bool,
}

pub const OMEGA_AGREEMENT: f64 = 1e-5;
pub const GAMMA_AGREEMENT: f64 = 1e-2;

/// Full analysis of the branch of `P` through `(0, c0)`; `coeffs`, when
/// given, feeds the extrapolation cross-check.
pub fn analyze(p: &BivarPoly, c0: &BigRational, coeffs: Option<&[BigInt]>) -> Result<SingularityReport, AsymptError> {
    let s = dominant_singularity(p, c0)?;
    let gamma = subexp_constant(p, &s)?;
    let omega = s.rho.recip();
    let extrapolation = coeffs.map(extrapolate_constants).transpose()?;
    let omega_discrepancy = extrapolation.as_ref().map(|e| rel_diff(&omega, &e.omega));
    let gamma_discrepancy = extrapolation.as_ref().map(|e| rel_diff(&gamma, &e.gamma));
    let diverged = omega_discrepancy.is_some_and(|d| d > OMEGA_AGREEMENT)
        || gamma_discrepancy.is_some_and(|d| d > GAMMA_AGREEMENT)
        || extrapolation.as_ref().is_some_and(|e| !e.converged || !e.exponent_is_three_halves);
    Ok(SingularityReport {
        rho: s.rho,
        omega,
        z_at_rho: s.z_at_rho,
        gamma,
        exponent: (-3, 2),
        extrapolation,
        omega_discrepancy,
        gamma_discrepancy,
        diverged,
    })
}

/// `analyze` for one of the known sources, with `terms` coefficients from
/// recurrence extension for the cross-check (`0` skips it).
pub fn report_for(source: RecurrenceSource, terms: usize) -> Result<SingularityReport, AsymptError> {
    let c0 = if source == RecurrenceSource::ExtendedRna { 0 } else { 1 };
    let coeffs = if terms > 0 { Some(extend_by_recurrence(source, terms)?) } else { None };
    analyze(&source.equation(), &BigRational::from_integer(c0.into()), coeffs.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn catalan_singularity() {
        // x Z^2 - Z + 1: rho = 1/4, Z(rho) = 2, gamma = 1/sqrt(pi)
        let eq = BivarPoly::new(vec![p(&[1]), p(&[-1]), p(&[0, 1])]);
        let one = BigRational::from_integer(1.into());
        let s = dominant_singularity(&eq, &one).unwrap();
        assert_eq!(s.rho.to_decimal(30), format!("0.{}", "25".to_string() + &"0".repeat(28)));
        assert!((s.z_at_rho.to_f64() - 2.0).abs() < 1e-15);
        assert!(s.residual_pz.to_f64() < 1e-80);
        let g = subexp_constant(&eq, &s).unwrap();
        assert!((g.to_f64() - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn catalan_extrapolation() {
        let mut c = vec![BigInt::from(1)];
        for n in 0..150u64 {
            let next = &c[n as usize] * BigInt::from(2 * (2 * n + 1)) / BigInt::from(n + 2);
            c.push(next);
        }
        let e = extrapolate_constants(&c).unwrap();
        assert!((e.omega.to_f64() - 4.0).abs() < 1e-10);
        assert!((e.gamma.to_f64() - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-6);
        assert!(e.exponent_is_three_halves && e.converged);
    }

    #[test]
    fn geometric_fails_exponent_check() {
        let c = vec![BigInt::from(1); 120];
        let e = extrapolate_constants(&c).unwrap();
        assert!((e.omega.to_f64() - 1.0).abs() < 1e-10);
        assert!(!e.exponent_is_three_halves);
        assert!(!e.converged);
    }

    #[test]
    fn short_input_rejected() {
        assert_eq!(
            extrapolate_constants(&vec![BigInt::from(1); 10]).unwrap_err(),
            AsymptError::TooFewTerms(10, MIN_TERMS)
        );
    }
}
