//! Eventually-polynomial Hilbert functions and their generating functions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{int, rational_to_integer, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

/// Spot-check horizon past the tail onset used when validating a tail.
const SPOT_CHECK: usize = 50;

/// `h(k)` given by finitely many exceptional values below `tail_start` and a
/// polynomial `tail(k)` from `tail_start` on. Indices below `tail_start`
/// without an exception have `h(k) = 0`.
///
/// Specs are kept canonical: `tail_start` is minimal, and exceptions hold
/// only nonzero values. Structural equality is therefore equality of the
/// sequences.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HilbertSpec {
    exceptions: BTreeMap<usize, BigInt>,
    tail_start: usize,
    tail: Polynomial,
}

impl HilbertSpec {
    /// Validates and canonicalizes.
    ///
    /// Fails with `InvalidSpec` when an exception sits at or above
    /// `tail_start`, is negative, or when the tail is not a nonnegative
    /// integer on `tail_start ..= tail_start + deg + 2` and on the spot-check
    /// range.
    pub fn new(
        exceptions: BTreeMap<usize, BigInt>,
        tail_start: usize,
        tail: Polynomial,
    ) -> Result<Self> {
        for (&k, v) in &exceptions {
            if k >= tail_start {
                return Err(Error::InvalidSpec(format!(
                    "exception at k={k} is not below tail start {tail_start}"
                )));
            }
            if v.is_negative() {
                return Err(Error::InvalidSpec(format!("negative value {v} at k={k}")));
            }
        }
        let deg = tail.degree().unwrap_or(0);
        for k in tail_start..=tail_start + (deg + 2).max(SPOT_CHECK) {
            let v = tail.eval(&int(k as i64));
            if rational_to_integer(&v).is_none() || v.is_negative() {
                return Err(Error::InvalidSpec(format!(
                    "tail value {v} at k={k} is not a nonnegative integer"
                )));
            }
        }
        let mut spec = HilbertSpec {
            exceptions,
            tail_start,
            tail,
        };
        spec.canonicalize();
        Ok(spec)
    }

    /// The zero sequence.
    pub fn zero() -> Self {
        HilbertSpec {
            exceptions: BTreeMap::new(),
            tail_start: 0,
            tail: Polynomial::zero(),
        }
    }

    /// A finitely supported sequence `values[k]`.
    pub fn finite(values: &[i64]) -> Result<Self> {
        let exceptions = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(k, v)| (k, BigInt::from(*v)))
            .collect();
        Self::new(exceptions, values.len(), Polynomial::zero())
    }

    /// Builds the spec of a sequence given by a formula.
    ///
    /// The tail is interpolated from `h(k0 ..= k0 + degree_bound)` and the
    /// whole spec is then checked against `h` up to `k0 + degree_bound + 50`,
    /// so a wrong onset or degree bound is an error, not a silent misfit.
    pub fn from_fn<F>(tail_start: usize, degree_bound: usize, h: F) -> Result<Self>
    where
        F: Fn(usize) -> Rational,
    {
        let mut exceptions = BTreeMap::new();
        for k in 0..tail_start {
            let v = h(k);
            let vi = rational_to_integer(&v)
                .ok_or_else(|| Error::InvalidSpec(format!("h({k}) = {v} is not an integer")))?;
            if !vi.is_zero() {
                exceptions.insert(k, vi);
            }
        }
        let samples: Vec<Rational> = (0..=degree_bound).map(|j| h(tail_start + j)).collect();
        let tail = newton_interpolate(tail_start, &samples);
        let spec = Self::new(exceptions, tail_start, tail)?;
        for k in 0..=tail_start + degree_bound + SPOT_CHECK {
            let v = h(k);
            if Rational::from_integer(spec.h_value(k)) != v {
                return Err(Error::InvalidSpec(format!(
                    "formula value h({k}) = {v} disagrees with interpolated spec"
                )));
            }
        }
        Ok(spec)
    }

    fn canonicalize(&mut self) {
        self.exceptions.retain(|_, v| !v.is_zero());
        while self.tail_start > 0 {
            let k = self.tail_start - 1;
            let here = self.exceptions.get(&k).cloned().unwrap_or_default();
            if Rational::from_integer(here) != self.tail.eval(&int(k as i64)) {
                break;
            }
            self.exceptions.remove(&k);
            self.tail_start = k;
        }
    }

    pub fn exceptions(&self) -> &BTreeMap<usize, BigInt> {
        &self.exceptions
    }

    pub fn tail_start(&self) -> usize {
        self.tail_start
    }

    /// Tail polynomial in the variable `k`.
    pub fn tail(&self) -> &Polynomial {
        &self.tail
    }

    pub fn h_value(&self, k: usize) -> BigInt {
        if k < self.tail_start {
            return self.exceptions.get(&k).cloned().unwrap_or_default();
        }
        rational_to_integer(&self.tail.eval(&int(k as i64))).expect("validated integer tail")
    }

    pub fn values(&self, k_max: usize) -> Vec<BigInt> {
        (0..=k_max).map(|k| self.h_value(k)).collect()
    }

    /// `Σ_k h(k) z^k` as a normalized rational function.
    ///
    /// The tail is expanded in the basis `C(k - k0 + j, j)`, `k >= k0`,
    /// whose generating functions are `z^k0 / (1 - z)^(j + 1)`; the
    /// coefficients are the forward differences `Δ^j tail(k0)`.
    pub fn generating_function(&self) -> RationalFunction {
        let k0 = self.tail_start;
        let deg = match self.tail.degree() {
            Some(d) => d,
            None => {
                let head = Polynomial::new(
                    (0..k0)
                        .map(|k| Rational::from_integer(self.h_value(k)))
                        .collect(),
                );
                return RationalFunction::from(head);
            }
        };
        let samples: Vec<Rational> = (0..=deg)
            .map(|j| self.tail.eval(&int((k0 + j) as i64)))
            .collect();
        let diffs = forward_differences(&samples);
        let one_minus_z = Polynomial::one_minus_z();
        let mut num = Polynomial::zero();
        for (j, dj) in diffs.iter().enumerate() {
            if dj.is_zero() {
                continue;
            }
            let term =
                &Polynomial::monomial(dj.clone(), k0 + j) * &one_minus_z.pow((deg - j) as u32);
            num = &num + &term;
        }
        let head = Polynomial::new(
            (0..k0)
                .map(|k| Rational::from_integer(self.h_value(k)))
                .collect(),
        );
        let den = one_minus_z.pow((deg + 1) as u32);
        num = &num + &(&head * &den);
        RationalFunction::normalize(num, den).expect("nonzero denominator")
    }
}

impl fmt::Debug for HilbertSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HilbertSpec({self})")
    }
}

impl fmt::Display for HilbertSpec {
    /// e.g. `h_5 = 3; h_k = -4 - (1/2)k + (1/2)k^2 for k >= 6`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .exceptions
            .iter()
            .map(|(k, v)| format!("h_{k} = {v}"))
            .collect();
        parts.push(format!(
            "h_k = {} for k >= {}",
            self.tail.to_text("k"),
            self.tail_start
        ));
        f.write_str(&parts.join("; "))
    }
}

/// `[Δ^0 v_0, Δ^1 v_0, ..., Δ^m v_0]` for samples `v_0 ..= v_m`.
fn forward_differences(samples: &[Rational]) -> Vec<Rational> {
    let mut row = samples.to_vec();
    let mut out = Vec::with_capacity(samples.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// The polynomial `p(k)` of degree `< samples.len()` with
/// `p(k0 + j) = samples[j]`, in Newton form `Σ_j Δ^j p(k0) C(k - k0, j)`.
fn newton_interpolate(k0: usize, samples: &[Rational]) -> Polynomial {
    let diffs = forward_differences(samples);
    let mut acc = Polynomial::zero();
    // basis = C(k - k0, j) as a polynomial in k
    let mut basis = Polynomial::one();
    for (j, dj) in diffs.iter().enumerate() {
        if !dj.is_zero() {
            acc = &acc + &basis.scale(dj);
        }
        let shift = int(k0 as i64 + j as i64);
        let factor = Polynomial::new(vec![-shift, Rational::one()]);
        basis = (&basis * &factor).scale(&Rational::new(BigInt::one(), BigInt::from(j + 1)));
    }
    acc
}

/// Exact generating function of a Hilbert spec.
pub fn gf_from_hilbert(spec: &HilbertSpec) -> RationalFunction {
    spec.generating_function()
}

/// Recovers the Hilbert spec whose generating function is `f`.
///
/// `f` must be `R(z) / (1 - z)^d` (no other poles). The tail onset is the
/// first index after which every `d`-th difference of the coefficients
/// vanishes up to `k_confirm`; at least `d + 3` vanishing differences are
/// required before the tail is accepted.
pub fn spec_from_gf(f: &RationalFunction, k_confirm: usize) -> Result<HilbertSpec> {
    if f.den().coeff(0).is_zero() {
        return Err(Error::PoleAtOrigin);
    }
    if f.is_zero() {
        return Ok(HilbertSpec::zero());
    }
    let one_minus_z = Polynomial::one_minus_z();
    let d = f.den().multiplicity_of(&one_minus_z) as usize;
    let rest = f
        .den()
        .div_exact(&one_minus_z.pow(d as u32))
        .expect("multiplicity divides");
    if !rest.is_constant() {
        return Err(Error::NotEventuallyPolynomial(format!(
            "denominator factor {rest} has roots other than z = 1"
        )));
    }
    let coeffs = f.series_expand(k_confirm)?.into_coeffs();
    let mut ints = Vec::with_capacity(coeffs.len());
    for (k, c) in coeffs.iter().enumerate() {
        match rational_to_integer(c) {
            Some(v) if !v.is_negative() => ints.push(Rational::from_integer(v)),
            _ => {
                return Err(Error::InvalidSpec(format!(
                    "coefficient {c} at k={k} is not a nonnegative integer"
                )))
            }
        }
    }
    let spec = spec_from_values(&ints, d)?;
    if let Some(k) = (0..=k_confirm).find(|&k| Rational::from_integer(spec.h_value(k)) != ints[k]) {
        return Err(Error::InvalidSpec(format!(
            "reconstructed spec disagrees with series at k={k}"
        )));
    }
    Ok(spec)
}

/// Fits an eventually-polynomial spec of tail degree `< d` to a finite run
/// of values.
///
/// The onset is the first index after which every `d`-th difference
/// vanishes; at least `d + 3` vanishing differences are required.
pub fn spec_from_values(values: &[Rational], d: usize) -> Result<HilbertSpec> {
    let mut diff = values.to_vec();
    for _ in 0..d {
        diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let mut onset = diff.len();
    while onset > 0 && diff[onset - 1].is_zero() {
        onset -= 1;
    }
    let vanishing = diff.len() - onset;
    if vanishing < d + 3 {
        return Err(Error::HorizonTooShort(format!(
            "only {vanishing} vanishing order-{d} differences among {} values; need {}",
            values.len(),
            d + 3
        )));
    }
    let tail = newton_interpolate(onset, &values[onset..onset + d]);
    let mut exceptions = BTreeMap::new();
    for (k, v) in values.iter().enumerate().take(onset) {
        let vi = rational_to_integer(v)
            .ok_or_else(|| Error::InvalidSpec(format!("value {v} at k={k} is not an integer")))?;
        if !vi.is_zero() {
            exceptions.insert(k, vi);
        }
    }
    HilbertSpec::new(exceptions, onset, tail)
}

/// Like [`spec_from_values`] with the smallest tail degree the data support.
pub fn fit_spec(values: &[Rational]) -> Result<HilbertSpec> {
    let mut last = None;
    for d in 0..values.len() {
        match spec_from_values(values, d) {
            Ok(s) => return Ok(s),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::HorizonTooShort("no values".into())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub k: usize,
    /// Value of the Hilbert spec.
    pub expected: BigInt,
    /// Taylor coefficient of the generating function.
    pub got: Rational,
}

/// Outcome of comparing a generating function with a Hilbert spec.
///
/// `matched_up_to` is the last index of the agreeing prefix (`-1` if the
/// very first coefficient differs); it equals the requested horizon iff
/// there is no mismatch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchReport {
    pub matched_up_to: i64,
    pub first_mismatch: Option<Mismatch>,
}

impl MatchReport {
    pub fn is_match(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares `[z^k] f` with `h(k)` for `k = 0 ..= k_max`.
pub fn equal_series(f: &RationalFunction, spec: &HilbertSpec, k_max: usize) -> Result<MatchReport> {
    let series = f.series_expand(k_max)?;
    for (k, got) in series.coeffs().iter().enumerate() {
        let expected = spec.h_value(k);
        if Rational::from_integer(expected.clone()) != *got {
            return Ok(MatchReport {
                matched_up_to: k as i64 - 1,
                first_mismatch: Some(Mismatch {
                    k,
                    expected,
                    got: got.clone(),
                }),
            });
        }
    }
    Ok(MatchReport {
        matched_up_to: k_max as i64,
        first_mismatch: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    fn riemann2() -> HilbertSpec {
        HilbertSpec::from_fn(4, 1, |k| match k {
            0 | 1 => int(0),
            2 | 3 => int(1),
            _ => int(k as i64 - 1),
        })
        .unwrap()
    }

    #[test]
    fn canonical_onset() {
        let s = riemann2();
        assert_eq!(s.tail_start(), 4);
        assert_eq!(s.h_value(3), BigInt::from(1));
        assert_eq!(s.h_value(1), BigInt::from(0));
        let ex = (2..5).map(|k| (k, BigInt::from(k as i64 - 1))).collect();
        let t = HilbertSpec::new(ex, 5, p(&[-1, 1])).unwrap();
        // exceptions agree with k - 1, which also vanishes at k = 1
        assert_eq!(t.tail_start(), 1);
        assert!(t.exceptions().is_empty());
        let u = HilbertSpec::new(BTreeMap::new(), 5, p(&[-1, 1])).unwrap();
        assert_eq!(u.tail_start(), 5);
    }

    #[test]
    fn gf_of_riemannian_surface() {
        let f = gf_from_hilbert(&riemann2());
        let want = RationalFunction::normalize(p(&[0, 0, 1, -1, 2, -1]), p(&[1, -2, 1])).unwrap();
        assert_eq!(f, want);
    }

    #[test]
    fn gf_of_zero() {
        assert_eq!(
            gf_from_hilbert(&HilbertSpec::zero()),
            RationalFunction::zero()
        );
    }

    #[test]
    fn gf_of_cubic_ode() {
        let s = HilbertSpec::from_fn(4, 1, |k| {
            if k >= 4 {
                int(2 * (k as i64 - 1))
            } else {
                int(0)
            }
        })
        .unwrap();
        let want = RationalFunction::normalize(p(&[0, 0, 0, 0, 6, -4]), p(&[1, -2, 1])).unwrap();
        assert_eq!(gf_from_hilbert(&s), want);
    }

    #[test]
    fn spec_from_ode_general() {
        let f = RationalFunction::normalize(
            &Polynomial::monomial(int(1), 5) * &p(&[3, 2, -7, 3]),
            Polynomial::one_minus_z().pow(3),
        )
        .unwrap();
        let s = spec_from_gf(&f, 40).unwrap();
        assert_eq!(s.tail_start(), 6);
        assert_eq!(s.exceptions().get(&5), Some(&BigInt::from(3)));
        assert_eq!(
            s.tail(),
            &Polynomial::new(vec![int(-4), rat(-1, 2), rat(1, 2)])
        );
    }

    #[test]
    fn spec_from_other_poles_rejected() {
        let g = RationalFunction::normalize(Polynomial::one(), p(&[1, 0, -1]).pow(2)).unwrap();
        assert!(matches!(
            spec_from_gf(&g, 40),
            Err(Error::NotEventuallyPolynomial(_))
        ));
        let neg = RationalFunction::from(p(&[1, -2, 1]));
        assert!(matches!(spec_from_gf(&neg, 10), Err(Error::InvalidSpec(_))));
        let fin = RationalFunction::from(p(&[0, 2, 0, 1]));
        assert_eq!(
            spec_from_gf(&fin, 10).unwrap(),
            HilbertSpec::finite(&[0, 2, 0, 1]).unwrap()
        );
    }

    #[test]
    fn spec_from_zero() {
        assert_eq!(
            spec_from_gf(&RationalFunction::zero(), 5).unwrap(),
            HilbertSpec::zero()
        );
    }

    #[test]
    fn horizon_too_short() {
        let f = RationalFunction::normalize(
            Polynomial::monomial(int(1), 10),
            Polynomial::one_minus_z().pow(2),
        )
        .unwrap();
        assert!(matches!(
            spec_from_gf(&f, 12),
            Err(Error::HorizonTooShort(_))
        ));
        assert!(spec_from_gf(&f, 20).is_ok());
    }

    #[test]
    fn equal_series_reports_first_mismatch() {
        let r = equal_series(&RationalFunction::pole_at_one(1), &HilbertSpec::zero(), 10).unwrap();
        let m = r.first_mismatch.unwrap();
        assert_eq!((m.k, m.expected, m.got), (0, BigInt::from(0), int(1)));
        assert_eq!(r.matched_up_to, -1);
    }

    #[test]
    fn invalid_specs_rejected() {
        let mut ex = BTreeMap::new();
        ex.insert(3, BigInt::from(1));
        assert!(HilbertSpec::new(ex, 2, Polynomial::zero()).is_err());
        assert!(HilbertSpec::new(BTreeMap::new(), 0, Polynomial::new(vec![rat(1, 2)])).is_err());
        assert!(HilbertSpec::new(BTreeMap::new(), 0, p(&[-1])).is_err());
    }
}
