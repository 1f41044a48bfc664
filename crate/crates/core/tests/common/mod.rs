//! Property suites shared by the property tests and the acceptance gate.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestError, TestRunner};

use poincare_core::algebra::expr::parse_rational_function;
use poincare_core::analysis::{analyze, s_sequence};
use poincare_core::hilbert::{gf_from_hilbert, spec_from_gf};
use poincare_core::{binomial, HilbertSpec, Polynomial, Rational, RationalFunction};

pub const SEED: u64 = 0x5eed_0001;
pub const CASES: u32 = 1000;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-6i64..=6, 0..5).prop_map(|c| Polynomial::from_i64(&c))
}

pub fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Polynomials not vanishing at `z = 0` or `z = 1`.
pub fn unit_poly() -> impl Strategy<Value = Polynomial> {
    nonzero_poly().prop_filter("regular at 0 and 1", |p| {
        !p.coeff(0).is_zero() && !p.eval(&q(1)).is_zero()
    })
}

pub fn ratfun() -> impl Strategy<Value = RationalFunction> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RationalFunction::normalize(n, d).unwrap())
}

/// `R(z) / (1-z)^d` with `R(1) != 0`.
pub fn pr_form() -> impl Strategy<Value = RationalFunction> {
    (unit_poly(), 0u32..4).prop_map(|(r, d)| {
        RationalFunction::normalize(r, Polynomial::one_minus_z().pow(d)).unwrap()
    })
}

fn binomial_basis(ts: usize, j: usize) -> Polynomial {
    // C(k - ts + j, j) as a polynomial in k
    let mut p = Polynomial::one();
    for i in 1..=j {
        let lin = Polynomial::new(vec![q(i as i64 - ts as i64), q(1)]);
        p = &p * &lin.scale(&Rational::new(1.into(), (i as i64).into()));
    }
    p
}

pub fn hilbert_spec() -> impl Strategy<Value = HilbertSpec> {
    (
        0usize..6,
        prop::collection::vec(0i64..20, 6),
        prop::collection::vec(0i64..5, 4),
    )
        .prop_map(|(ts, exc, tail)| {
            let exceptions: BTreeMap<usize, BigInt> =
                (0..ts).map(|k| (k, BigInt::from(exc[k]))).collect();
            let poly = tail
                .iter()
                .enumerate()
                .fold(Polynomial::zero(), |acc, (j, &c)| {
                    &acc + &binomial_basis(ts, j).scale(&q(c))
                });
            HilbertSpec::new(exceptions, ts, poly).unwrap()
        })
}

fn is_constant_gcd(a: &Polynomial, b: &Polynomial) -> bool {
    a.gcd(b).is_constant()
}

pub fn canonical_form(
    (n, d, c): (Polynomial, Polynomial, Polynomial),
) -> Result<(), TestCaseError> {
    let f = RationalFunction::normalize(n.clone(), d.clone()).unwrap();
    let g = RationalFunction::normalize(&n * &c, &d * &c).unwrap();
    prop_assert_eq!(&f, &g);
    prop_assert!(is_constant_gcd(f.num(), f.den()) || f.num().is_zero());
    let den = f.den();
    if den.coeff(0).is_zero() {
        prop_assert!(den.leading().is_one());
    } else {
        prop_assert!(den.coeff(0).is_one());
    }
    let again = RationalFunction::normalize(f.num().clone(), f.den().clone()).unwrap();
    prop_assert_eq!(again, f);
    Ok(())
}

pub fn series_identity(f: RationalFunction) -> Result<(), TestCaseError> {
    let k = 20;
    let s = f.series_expand(k).unwrap();
    let den = poincare_core::PowerSeries::from_polynomial(f.den(), k);
    let num = poincare_core::PowerSeries::from_polynomial(f.num(), k);
    prop_assert_eq!(den.mul_truncated(&s), num);
    Ok(())
}

pub fn pole_binomial((n, k): (u32, usize)) -> Result<(), TestCaseError> {
    let c = RationalFunction::pole_at_one(n).coeff(k).unwrap();
    prop_assert_eq!(
        c,
        Rational::from_integer(binomial(n as i64 + k as i64 - 1, k as i64).unwrap())
    );
    Ok(())
}

pub fn multiplicity_additive(
    (f, g): (RationalFunction, RationalFunction),
) -> Result<(), TestCaseError> {
    prop_assume!(!f.is_zero() && !g.is_zero());
    let p = Polynomial::one_minus_z();
    let prod = &f * &g;
    let lhs = prod.factor_multiplicity(&p).unwrap();
    prop_assert_eq!(
        lhs,
        f.factor_multiplicity(&p).unwrap() + g.factor_multiplicity(&p).unwrap()
    );
    Ok(())
}

pub fn evaluation_homomorphism(
    (f, g, a, b): (RationalFunction, RationalFunction, i64, i64),
) -> Result<(), TestCaseError> {
    let x = Rational::new(a.into(), b.into());
    let (Ok(fx), Ok(gx)) = (f.eval(&x), g.eval(&x)) else {
        return Ok(());
    };
    prop_assert_eq!((&f + &g).eval(&x).unwrap(), &fx + &gx);
    prop_assert_eq!((&f * &g).eval(&x).unwrap(), &fx * &gx);
    prop_assert_eq!((&f - &g).eval(&x).unwrap(), &fx - &gx);
    Ok(())
}

pub fn text_round_trip(f: RationalFunction) -> Result<(), TestCaseError> {
    prop_assert_eq!(parse_rational_function(&f.to_text()).unwrap(), f);
    Ok(())
}

pub fn hilbert_round_trip(s: HilbertSpec) -> Result<(), TestCaseError> {
    let f = gf_from_hilbert(&s);
    prop_assert_eq!(&spec_from_gf(&f, 60).unwrap(), &s);
    let series = f.series_expand(60).unwrap();
    for (k, c) in series.coeffs().iter().enumerate() {
        prop_assert_eq!(c, &Rational::from_integer(s.h_value(k)));
    }
    Ok(())
}

pub fn pole_data_multiplicative(
    (f, g): (RationalFunction, RationalFunction),
) -> Result<(), TestCaseError> {
    let (a, b, c) = (analyze(&f), analyze(&g), analyze(&(&f * &g)));
    prop_assert_eq!(c.d, a.d + b.d);
    prop_assert_eq!(c.sigma, &a.sigma * &b.sigma);
    prop_assert!(c.conforms_to_pr);
    Ok(())
}

pub fn partial_sums((f, k): (RationalFunction, usize)) -> Result<(), TestCaseError> {
    prop_assume!(!f.den().coeff(0).is_zero());
    let s = s_sequence(&f, k).unwrap();
    let h = f.series_expand(k).unwrap();
    prop_assert_eq!(s.len(), k + 1);
    let mut acc = Rational::zero();
    for (si, hi) in s.iter().zip(h.coeffs()) {
        acc += hi;
        prop_assert_eq!(si, &acc);
    }
    Ok(())
}

fn run<S, F>(cases: u32, strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: Clone + std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let mut runner = TestRunner::new(config(cases));
    match runner.run(&strategy, test) {
        Ok(()) => Ok(()),
        Err(TestError::Fail(why, value)) => Err(format!("{why}: {value:?}")),
        Err(TestError::Abort(why)) => Err(format!("aborted: {why}")),
    }
}

/// Every suite with its outcome, in a fixed order.
pub fn run_all(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let series_fn = ratfun().prop_filter("regular at 0", |f| !f.den().coeff(0).is_zero());
    vec![
        (
            "canonical form",
            run(
                cases,
                (poly(), nonzero_poly(), nonzero_poly()),
                canonical_form,
            ),
        ),
        ("den * series = num", run(cases, series_fn, series_identity)),
        (
            "coeff of 1/(1-z)^n",
            run(cases, (1u32..12, 0usize..60), pole_binomial),
        ),
        (
            "multiplicity additive",
            run(cases, (ratfun(), ratfun()), multiplicity_additive),
        ),
        (
            "evaluation homomorphism",
            run(
                cases,
                (ratfun(), ratfun(), -9i64..=9, 1i64..=9),
                evaluation_homomorphism,
            ),
        ),
        ("text round trip", run(cases, ratfun(), text_round_trip)),
        (
            "hilbert round trip",
            run(cases, hilbert_spec(), hilbert_round_trip),
        ),
        (
            "pole data multiplicative",
            run(cases, (pr_form(), pr_form()), pole_data_multiplicative),
        ),
        (
            "partial sums",
            run(cases, (ratfun(), 0usize..30), partial_sums),
        ),
    ]
}

/// Draws one value, for smoke checks of a strategy.
pub fn sample<S: Strategy>(s: S) -> S::Value {
    let mut runner = TestRunner::new(config(1));
    s.new_tree(&mut runner).unwrap().current()
}
