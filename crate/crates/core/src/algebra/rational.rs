use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Returns the integer value of `q` when its denominator is one.
pub fn rational_to_integer(q: &Rational) -> Option<BigInt> {
    if q.denom().is_one() {
        Some(q.numer().clone())
    } else {
        None
    }
}

/// Binomial coefficient `C(m, k)` with the conventions `C(m, k) = 0` for
/// `k < 0` and for `0 <= m < k`.
///
/// Negative `m` with `k >= 0` is outside the counting domain and rejected.
pub fn binomial(m: i64, k: i64) -> Result<BigInt> {
    if k < 0 {
        return Ok(BigInt::zero());
    }
    if m < 0 {
        return Err(Error::UnsupportedArgument(format!(
            "binomial({m}, {k}) with negative upper index"
        )));
    }
    if m < k {
        return Ok(BigInt::zero());
    }
    let k = k.min(m - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(m - i) / BigInt::from(i + 1);
    }
    Ok(acc)
}

/// `binomial` for call sites whose arguments are nonnegative by construction.
///
/// Panics on a negative upper index with `k >= 0`.
pub fn binomial_i64(m: i64, k: i64) -> i64 {
    let b = binomial(m, k).expect("binomial with negative upper index");
    i64::try_from(b).expect("binomial overflows i64")
}

pub(crate) fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
