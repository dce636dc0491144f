use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{algebraic_to_ode, HolonomicError, LinearOde};
use crate::poly::{isolate_roots_unit, refine_root, Poly};
use crate::series::equations::{
    build_eq_extended_rna, build_eq_rm, build_eq_z, build_eq_zm, printed_z_ode, printed_z_recurrence,
};
use crate::series::{series_extended_rna, series_rm, series_z, series_zm, BivarPoly, Series};

/// `sum_{i=0}^{r} p_i(n) c(n+i) = 0` for every `n >= n0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PRecurrence {
    pub p: Vec<Poly>,
    pub n0: usize,
}

impl PRecurrence {
    pub fn order(&self) -> usize {
        self.p.len() - 1
    }

    /// Largest degree in `n` among the coefficients.
    pub fn degree(&self) -> usize {
        self.p.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// `sum_i p_i(n) c(n+i)`; needs `c` through index `n + r`.
    pub fn residual(&self, n: usize, c: &[BigRational]) -> BigRational {
        let nn = BigInt::from(n);
        self.p.iter().enumerate().map(|(i, p)| BigRational::from_integer(p.eval(&nn)) * &c[n + i]).sum()
    }

    /// Nonnegative integer roots of the leading coefficient, where forward
    /// evaluation cannot divide.
    pub fn leading_roots(&self) -> Vec<usize> {
        let lead = self.p.last().expect("nonempty recurrence");
        integer_roots(lead)
    }

    /// Number of initial terms forward evaluation needs.
    pub fn initial_len(&self) -> usize {
        let start = self.leading_roots().last().map_or(self.n0, |&r| self.n0.max(r + 1));
        start + self.order()
    }
}

/// Nonnegative integer roots of an integer polynomial. Positive roots lie
/// below the Cauchy bound `B = 2^k`; they are isolated as roots of
/// `f(B t)` on `(0, 1)`, refined to width below one, and checked exactly.
fn integer_roots(p: &Poly) -> Vec<usize> {
    if p.is_zero() {
        return Vec::new();
    }
    let v = p.valuation();
    let mut roots = if v > 0 { vec![0] } else { Vec::new() };
    let f = p.unshift(v).squarefree_part();
    if f.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let k = cauchy_bound(&f).bits();
    let scaled = Poly::new(f.coeffs().iter().enumerate().map(|(i, c)| c << (k as usize * i)).collect());
    let mut candidates = Vec::new();
    for iv in isolate_roots_unit(&scaled) {
        let iv = refine_root(&scaled, &iv, k + 3);
        // In units of n the interval is [lo, hi] / 2^(bits - k).
        let shift = iv.bits - k;
        let lo = iv.lo.clone() >> shift as usize;
        let hi = (&iv.hi + ((BigInt::one() << shift as usize) - 1)) >> shift as usize;
        let mut n = lo;
        while n <= hi {
            candidates.push(n.clone());
            n += 1;
        }
    }
    candidates.push(BigInt::one() << k as usize);
    for c in candidates {
        if c.is_positive() && f.eval(&c).is_zero() {
            roots.push(c.to_usize().expect("root fits in usize"));
        }
    }
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// `1 + max |a_i / a_d|`, rounded up.
fn cauchy_bound(p: &Poly) -> BigInt {
    let lc = p.lc().abs();
    let max = p.coeffs().iter().map(|a| a.abs()).max().unwrap_or_default();
    BigInt::one() + max.div_ceil(&lc)
}

/// `n (n-1) ... (n-k+1)` as a polynomial in `n`, with `n` replaced by `n + i`.
fn falling(i: i64, k: usize) -> Poly {
    (0..k).fold(Poly::one(), |acc, j| &acc * &Poly::new(vec![BigInt::from(i - j as i64), BigInt::from(1)]))
}

/// Coefficient extraction: `[x^N]` of `sum_k q_k(x) Y^(k)` is
/// `sum_i p_i(n) c(n+i)` with `n = N + s_min`, where a monomial `x^a Y^(k)`
/// contributes to the shift `k - a`. The bound `n0` is where the
/// inhomogeneous term no longer reaches; `certify_window` may lower it.
pub fn ode_to_recurrence(ode: &LinearOde) -> PRecurrence {
    let shifts: Vec<i64> = ode
        .q
        .iter()
        .enumerate()
        .flat_map(|(k, q)| {
            q.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(a, _)| k as i64 - a as i64)
        })
        .collect();
    let s_min = *shifts.iter().min().expect("nonzero operator");
    let s_max = *shifts.iter().max().unwrap();
    let mut p = vec![Poly::zero(); (s_max - s_min + 1) as usize];
    for (k, q) in ode.q.iter().enumerate() {
        for (a, c) in q.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let i = (k as i64 - a as i64 - s_min) as usize;
            p[i] = &p[i] + &falling(i as i64, k).scale(c);
        }
    }
    let content = p.iter().fold(BigInt::zero(), |g, q| g.gcd(&q.content()));
    if !content.is_zero() {
        p = p.into_iter().map(|q| q.div_exact_int(&content).unwrap()).collect();
    }
    let first_free = if ode.inh.is_zero() { 0 } else { ode.inh.degree().unwrap() as i64 + 1 };
    let n0 = (first_free + s_min).max(0) as usize;
    PRecurrence { p, n0 }
}

/// Checks the recurrence against every window the series supports, from
/// its `n0` on, and lowers `n0` to the first index from which all
/// residuals vanish.
pub fn certify_window(rec: &PRecurrence, s: &Series) -> Result<PRecurrence, HolonomicError> {
    let r = rec.order();
    let need = rec.n0 + r + 1;
    if s.order() + 1 < need {
        return Err(HolonomicError::NotEnoughTerms { need, have: s.order() + 1 });
    }
    let last = s.order() - r;
    if let Some(n) = (rec.n0..=last).find(|&n| !rec.residual(n, s.coeffs()).is_zero()) {
        return Err(HolonomicError::Mismatch(n));
    }
    let mut n0 = rec.n0;
    while n0 > 0 && rec.residual(n0 - 1, s.coeffs()).is_zero() {
        n0 -= 1;
    }
    Ok(PRecurrence { p: rec.p.clone(), n0 })
}

/// Extends `init` to `len` terms with the recurrence. Integer sequences
/// stay in integer arithmetic; otherwise rationals are used.
pub fn eval_recurrence(
    rec: &PRecurrence,
    init: &[BigRational],
    len: usize,
) -> Result<Vec<BigRational>, HolonomicError> {
    let r = rec.order();
    let need = rec.n0 + r;
    if init.len() < need.min(len) {
        return Err(HolonomicError::NotEnoughTerms { need, have: init.len() });
    }
    let mut out: Vec<BigRational> = init.iter().take(len).cloned().collect();
    let mut ints: Option<Vec<BigInt>> =
        out.iter().all(|v| v.is_integer()).then(|| out.iter().map(|v| v.to_integer()).collect());
    while out.len() < len {
        let n = out.len() - r;
        let nn = BigInt::from(n);
        let lead = rec.p[r].eval(&nn);
        if lead.is_zero() {
            return Err(HolonomicError::LeadingZero(n));
        }
        let next = match ints.as_mut() {
            Some(iv) => {
                let sum: BigInt = (0..r).map(|i| rec.p[i].eval(&nn) * &iv[n + i]).sum();
                let (q, rem) = (-&sum).div_rem(&lead);
                if rem.is_zero() {
                    iv.push(q.clone());
                    BigRational::from_integer(q)
                } else {
                    ints = None;
                    BigRational::new(-sum, lead)
                }
            }
            None => {
                let sum: BigRational =
                    (0..r).map(|i| BigRational::from_integer(rec.p[i].eval(&nn)) * &out[n + i]).sum();
                -sum / BigRational::from_integer(lead)
            }
        };
        out.push(next);
    }
    Ok(out)
}

/// The algebraic series with a derived recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceSource {
    Zigzag,
    Reduced(usize),
    RegularLinear(usize),
    ExtendedRna,
}

impl RecurrenceSource {
    pub fn equation(self) -> BivarPoly {
        match self {
            RecurrenceSource::Zigzag => build_eq_z(),
            RecurrenceSource::Reduced(m) => build_eq_zm(m),
            RecurrenceSource::RegularLinear(m) => build_eq_rm(m),
            RecurrenceSource::ExtendedRna => build_eq_extended_rna(),
        }
    }

    pub fn series(self, order: usize) -> Result<Series, HolonomicError> {
        Ok(match self {
            RecurrenceSource::Zigzag => series_z(order)?,
            RecurrenceSource::Reduced(m) => series_zm(m, order)?,
            RecurrenceSource::RegularLinear(m) => series_rm(m, order)?,
            RecurrenceSource::ExtendedRna => series_extended_rna(order)?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct RecurrenceReport {
    pub ode: LinearOde,
    pub rec: PRecurrence,
    pub initial: Vec<BigInt>,
    /// Terms reproduced by forward evaluation and compared with the series.
    pub checked_through: usize,
}

/// Derives the ODE and recurrence of a source, certifies `n0` against the
/// series, and checks that forward evaluation from the initial terms
/// reproduces the series through `x^check_to` (raised when needed so that
/// at least `order` terms are computed rather than copied).
pub fn recurrence_for(source: RecurrenceSource, check_to: usize) -> Result<RecurrenceReport, HolonomicError> {
    let ode = algebraic_to_ode(&source.equation(), 8)?;
    let rec = ode_to_recurrence(&ode);
    let order = check_to.max(rec.initial_len() + 2 * rec.order() + 8);
    let s = source.series(order)?;
    let rec = certify_window(&rec, &s)?;
    let k = rec.initial_len();
    // Always run the recurrence past its own initial terms.
    let check_to = check_to.max(k + rec.order());
    let s = if s.order() < check_to { source.series(check_to)? } else { s };
    let init = s.coeffs()[..k].to_vec();
    let seq = eval_recurrence(&rec, &init, check_to + 1)?;
    if let Some(n) = seq.iter().zip(s.coeffs()).position(|(a, b)| a != b) {
        return Err(HolonomicError::Mismatch(n));
    }
    let initial = init.iter().map(|v| v.to_integer()).collect();
    Ok(RecurrenceReport { ode, rec, initial, checked_through: check_to })
}

/// The first `len` coefficients of a source: enough terms from the series
/// to start and certify the recurrence, the rest by forward evaluation.
pub fn extend_by_recurrence(source: RecurrenceSource, len: usize) -> Result<Vec<BigInt>, HolonomicError> {
    let ode = algebraic_to_ode(&source.equation(), 8)?;
    let rec = ode_to_recurrence(&ode);
    let s = source.series(rec.initial_len() + 2 * rec.order() + 8)?;
    let rec = certify_window(&rec, &s)?;
    let init = &s.coeffs()[..rec.initial_len().min(s.coeffs().len())];
    let seq = eval_recurrence(&rec, init, len)?;
    seq.iter()
        .enumerate()
        .map(|(n, v)| if v.is_integer() { Ok(v.to_integer()) } else { Err(HolonomicError::Mismatch(n)) })
        .collect()
}

/// Checks the printed zigzag recurrence on `n = 0..=n_max`. Returns the
/// number of indices checked.
pub fn verify_printed_recurrence_z(n_max: usize) -> Result<usize, HolonomicError> {
    let rec = PRecurrence { p: printed_z_recurrence(), n0: 0 };
    let s = series_z(n_max + rec.order())?;
    match (0..=n_max).find(|&n| !rec.residual(n, s.coeffs()).is_zero()) {
        Some(n) => Err(HolonomicError::Mismatch(n)),
        None => Ok(n_max + 1),
    }
}

/// Result of applying the printed zigzag ODE to the series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdeCheck {
    /// The output is exact through this power of `x`.
    pub checked_through: usize,
    pub first_nonzero: Option<usize>,
}

pub fn verify_printed_ode_z(order: usize) -> Result<OdeCheck, HolonomicError> {
    let (q, inh) = printed_z_ode();
    let ode = LinearOde { q, inh };
    let out = ode.apply(&series_z(order)?);
    Ok(OdeCheck { checked_through: out.order(), first_nonzero: out.first_nonzero() })
}

/// Each recurrence applied to the sequence generated by the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub first_kills_second: bool,
    pub second_kills_first: bool,
    pub checked: usize,
}

/// Generates a sequence with each recurrence from the same initial terms
/// of `s` and applies the other recurrence to it on `len` terms.
pub fn cross_annihilate(
    a: &PRecurrence,
    b: &PRecurrence,
    s: &Series,
    len: usize,
) -> Result<CrossCheck, HolonomicError> {
    let gen = |rec: &PRecurrence| eval_recurrence(rec, &s.coeffs()[..rec.initial_len()], len);
    let kills =
        |rec: &PRecurrence, seq: &[BigRational]| (rec.n0..len - rec.order()).all(|n| rec.residual(n, seq).is_zero());
    let seq_a = gen(a)?;
    let seq_b = gen(b)?;
    Ok(CrossCheck { first_kills_second: kills(a, &seq_b), second_kills_first: kills(b, &seq_a), checked: len })
}

/// The printed zigzag recurrence with `n0 = 0`.
pub fn printed_z_prec() -> PRecurrence {
    PRecurrence { p: printed_z_recurrence(), n0: 0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn geometric_recurrence() {
        // (1 - x) Y' - Y = 0  gives  (n+1) c(n+1) - (n+1) c(n) = 0
        let ode = LinearOde { q: vec![p(&[-1]), p(&[1, -1])], inh: Poly::zero() };
        let rec = ode_to_recurrence(&ode);
        assert_eq!(rec.order(), 1);
        assert_eq!(rec.p, vec![p(&[-1, -1]), p(&[1, 1])]);
        let one = BigRational::from_integer(1.into());
        let seq = eval_recurrence(&rec, std::slice::from_ref(&one), 6).unwrap();
        assert!(seq.iter().all(|v| *v == one));
    }

    #[test]
    fn leading_zero_reported() {
        let rec = PRecurrence { p: vec![p(&[1]), p(&[-3, 1])], n0: 0 };
        let one = BigRational::from_integer(1.into());
        assert_eq!(eval_recurrence(&rec, &[one], 10), Err(HolonomicError::LeadingZero(3)));
        assert_eq!(rec.leading_roots(), vec![3]);
        let wide = PRecurrence { p: vec![p(&[1]), &p(&[-1_000_003, 1]) * &p(&[0, 2, 1])], n0: 0 };
        assert_eq!(wide.leading_roots(), vec![0, 1_000_003]);
        assert_eq!(rec.initial_len(), 5);
    }

    #[test]
    fn too_few_initial_terms() {
        let rec = PRecurrence { p: vec![p(&[1]), p(&[1]), p(&[1])], n0: 1 };
        assert!(matches!(eval_recurrence(&rec, &[], 5), Err(HolonomicError::NotEnoughTerms { .. })));
    }

    #[test]
    fn zigzag_recurrence_reproduces_series() {
        let rep = recurrence_for(RecurrenceSource::Zigzag, 80).unwrap();
        assert_eq!(rep.ode.order(), 2);
        assert_eq!(rep.checked_through, 80);
    }
}
