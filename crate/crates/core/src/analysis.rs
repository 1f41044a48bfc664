//! Pole analysis of Poincare functions: functional dimension `d` (pole
//! order at `z = 1`), functional rank `σ = ((1-z)^d P)(1)`, cumulative counts
//! `s_k`, and detection of poles at other roots of unity.

use num_traits::{Signed, Zero};

use crate::algebra::{
    binomial, cyclotomic, euler_phi, int, Polynomial, Rational, RationalFunction,
};
use crate::error::{Error, Result};

/// Horizon of [`asymptotic_check`].
pub const ASYMPTOTIC_K: usize = 200;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PoleReport {
    /// Pole order at `z = 1`; zero when `P` is regular there.
    pub d: i64,
    pub sigma: Rational,
    /// `(Φ_m, multiplicity)` for `m >= 2` dividing the denominator.
    pub other_unit_poles: Vec<(Polynomial, i64)>,
    /// Denominator is a constant times `(1 - z)^d`.
    pub conforms_to_pr: bool,
}

pub fn analyze(f: &RationalFunction) -> PoleReport {
    if f.is_zero() {
        return PoleReport {
            d: 0,
            sigma: Rational::zero(),
            other_unit_poles: Vec::new(),
            conforms_to_pr: true,
        };
    }
    let one_minus_z = Polynomial::one_minus_z();
    let d = f
        .factor_multiplicity(&one_minus_z)
        .expect("non-constant factor")
        .max(0);
    let lifted = f * &RationalFunction::from(one_minus_z.pow(d as u32));
    let sigma = lifted.eval(&int(1)).expect("pole at 1 removed");
    let den = f.den();
    let deg = den.degree().unwrap_or(0) as u64;
    let mut other = Vec::new();
    // φ(m) >= sqrt(m/2), so Φ_m of degree <= deg has m <= 2 deg^2
    for m in 2..=(2 * deg * deg).max(2) {
        if euler_phi(m) > deg {
            continue;
        }
        let p = cyclotomic(m);
        let mult = den.multiplicity_of(&p) as i64;
        if mult > 0 {
            other.push((p, mult));
        }
    }
    let rest = den
        .div_exact(&one_minus_z.pow(d as u32))
        .expect("multiplicity divides");
    PoleReport {
        d,
        sigma,
        conforms_to_pr: rest.is_constant(),
        other_unit_poles: other,
    }
}

/// Cumulative counts `s_k = Σ_{i<=k} [z^i] P` for `k = 0 ..= k_max`, i.e. the
/// coefficients of `P / (1 - z)`.
pub fn s_sequence(f: &RationalFunction, k_max: usize) -> Result<Vec<Rational>> {
    Ok(f.series_expand(k_max)?.partial_sums().into_coeffs())
}

fn within(x: &Rational, sigma: &Rational, k: usize) -> bool {
    let tol = sigma.abs() * Rational::new(10.into(), (k as i64).into());
    (x - sigma).abs() <= tol
}

/// Leading-term growth check at `K = 200`, exact in rationals.
///
/// With `d >= 1`, `h_K / C(K+d-1, d-1)` and `s_K / C(K+d, d)` must both lie
/// within `σ (1 ± 10/K)`. With `d = 0`, `s_K` itself must.
pub fn asymptotic_check(f: &RationalFunction) -> Result<bool> {
    let rep = analyze(f);
    if !rep.conforms_to_pr {
        return Err(Error::NotPrForm);
    }
    let k = ASYMPTOTIC_K;
    let series = f.series_expand(k)?;
    let s = series.partial_sums();
    let s_k = &s.coeffs()[k];
    if rep.d == 0 {
        return Ok(within(s_k, &rep.sigma, k));
    }
    let d = rep.d;
    let ki = k as i64;
    let norm_h = Rational::from_integer(binomial(ki + d - 1, d - 1)?);
    let norm_s = Rational::from_integer(binomial(ki + d, d)?);
    let h_k = &series.coeffs()[k];
    Ok(within(&(h_k / norm_h), &rep.sigma, k) && within(&(s_k / norm_s), &rep.sigma, k))
}
