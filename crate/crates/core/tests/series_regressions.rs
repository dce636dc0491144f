//! Generating functions against brute-force counts, and pinned
//! regressions for the recurrence and singularity machinery.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use stacklab::asympt::{dominant_singularity, report_for};
use stacklab::enumerate::{count_class, stack_convention_experiment, DiagramClass, StackConvention};
use stacklab::holonomic::{cross_annihilate, printed_z_prec, recurrence_for, RecurrenceSource};
use stacklab::series::{schroeder, series_extended_rna, series_rm, series_z, series_zm, Series};

fn counts(s: &Series) -> Vec<BigInt> {
    s.to_integers().expect("integer coefficients")
}

fn brute(n_max: usize, class: &DiagramClass) -> Vec<BigInt> {
    (0..=n_max).map(|n| BigInt::from(count_class(n, class).unwrap())).collect()
}

#[test]
fn series_match_enumeration() {
    const N: usize = 11;
    assert_eq!(counts(&series_z(N).unwrap()), brute(N, &DiagramClass::zigzag()));
    for m in 2..=5 {
        assert_eq!(counts(&series_zm(m, N).unwrap()), brute(N, &DiagramClass::reduced_zigzag(m).unwrap()), "m = {m}");
        assert_eq!(counts(&series_rm(m, N).unwrap()), brute(N, &DiagramClass::regular_linear(m).unwrap()), "m = {m}");
    }
    let mut s = brute(N, &DiagramClass::regular_linear(2).unwrap());
    s[0] -= 1;
    assert_eq!(counts(&series_extended_rna(N).unwrap()), s);
}

#[test]
fn schroeder_convention_is_pinned() {
    let a: Vec<BigUint> = counts(&schroeder(8).unwrap()).into_iter().map(|v| v.to_biguint().unwrap()).collect();
    assert_eq!(a[..6], [1u32, 2, 6, 22, 90, 394].map(BigUint::from));
    let rows = stack_convention_experiment(8, &a);
    let matching: Vec<StackConvention> = rows.iter().filter(|r| r.matches).map(|r| r.convention).collect();
    assert_eq!(matching, vec![StackConvention { shared_endpoints: true, isolated_vertices: true }]);
}

#[test]
fn derived_zigzag_recurrence_is_the_printed_one() {
    let report = recurrence_for(RecurrenceSource::Zigzag, 120).unwrap();
    let printed = printed_z_prec();
    assert_eq!(report.rec.p, printed.p);
    let z = series_z(150).unwrap();
    let check = cross_annihilate(&report.rec, &printed, &z, 150).unwrap();
    assert!(check.first_kills_second && check.second_kills_first);
}

#[test]
fn growth_rate_decreases_with_m() {
    let mut last = f64::INFINITY;
    for m in 2..=6 {
        let eq = RecurrenceSource::RegularLinear(m).equation();
        let s = dominant_singularity(&eq, &BigRational::from_integer(1.into())).unwrap();
        let omega = s.rho.recip().to_f64();
        assert!(omega < last, "omega({m}) = {omega} is not below {last}");
        assert!(s.residual_p.to_f64().abs() < 1e-60, "m = {m}");
        assert!(s.residual_pz.to_f64().abs() < 1e-60, "m = {m}");
        last = omega;
    }
    // Every R_m grows more slowly than the zigzag stacks.
    let z = dominant_singularity(&RecurrenceSource::Zigzag.equation(), &BigRational::from_integer(1.into())).unwrap();
    assert!(z.rho.recip().to_f64() > 4.6);
}

#[test]
fn reduced_and_regular_linear_share_constants_up_to_a_shift() {
    // R_m = 1 + ... + x^(m-2) + x^(m-1) Z_m: same radius, gamma scaled by rho^(m-1).
    let m = 3;
    let r = report_for(RecurrenceSource::RegularLinear(m), 0).unwrap();
    let z = report_for(RecurrenceSource::Reduced(m), 0).unwrap();
    let (rho, gr, gz) = (r.rho.to_f64(), r.gamma.to_f64(), z.gamma.to_f64());
    assert!((rho - z.rho.to_f64()).abs() < 1e-15);
    assert!((gr - gz * rho.powi(m as i32 - 1)).abs() < 1e-12);
}
