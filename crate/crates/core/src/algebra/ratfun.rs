use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::rational::{fmt_rational, int, Rational};
use super::series::PowerSeries;
use crate::error::{Error, Result};

/// Quotient `num / den` of two polynomials in `z`, kept in canonical form:
///
/// * `gcd(num, den) = 1`;
/// * `den(0) = 1` when `den(0) != 0`, otherwise `den` is monic;
/// * the zero function is `0 / 1`.
///
/// Two rational functions are equal iff their canonical forms coincide, so
/// the derived `PartialEq` is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds the canonical form of `num / den`.
    pub fn normalize(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let c0 = den.coeff(0);
        let scale = if c0.is_zero() { den.leading() } else { c0 };
        if !scale.is_one() {
            let inv = scale.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_polynomial(Polynomial::one())
    }

    pub fn z() -> Self {
        Self::from_polynomial(Polynomial::z())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(int(c))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// `1 / (1 - z)^d`
    pub fn pole_at_one(d: u32) -> Self {
        RationalFunction {
            num: Polynomial::one(),
            den: Polynomial::one_minus_z().pow(d),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            let e = e as u32;
            Self::normalize(self.num.pow(e), self.den.pow(e))
        } else {
            self.recip()?.pow(-e)
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalize(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(fmt_rational(x)));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Taylor coefficients of order `0..=k_max` at the origin, from the
    /// recurrence `den * series = num`.
    pub fn series_expand(&self, k_max: usize) -> Result<PowerSeries> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        let inv = d0.recip();
        let den = self.den.coeffs();
        let mut c: Vec<Rational> = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let mut acc = self.num.coeff(k);
            for (j, dj) in den.iter().enumerate().skip(1).take(k) {
                if !dj.is_zero() {
                    acc -= dj * &c[k - j];
                }
            }
            c.push(acc * &inv);
        }
        Ok(PowerSeries::new(c))
    }

    /// The `z^k` Taylor coefficient.
    pub fn coeff(&self, k: usize) -> Result<Rational> {
        Ok(self.series_expand(k)?.coeffs()[k].clone())
    }

    /// Multiplicity of the factor `p` in the denominator minus its
    /// multiplicity in the numerator: positive values are pole orders,
    /// negative values zero orders.
    pub fn factor_multiplicity(&self, p: &Polynomial) -> Result<i64> {
        if p.is_constant() {
            return Err(Error::UnsupportedArgument(
                "factor_multiplicity needs a non-constant factor".into(),
            ));
        }
        if self.is_zero() {
            return Err(Error::UnsupportedArgument(
                "factor multiplicity of the zero function is undefined".into(),
            ));
        }
        Ok(self.den.multiplicity_of(p) as i64 - self.num.multiplicity_of(p) as i64)
    }

    /// Plain-text form, e.g. `(2z^4 - ...)/(1 - 2z + z^2)`.
    pub fn to_text(&self) -> String {
        if self.is_polynomial() {
            let c = self.den.coeff(0);
            return self.num.scale(&c.recip()).to_string();
        }
        let single = self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
        if single {
            format!("{}/({})", self.num, self.den)
        } else {
            format!("({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.to_text())
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_polynomial(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        RationalFunction::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Div for &RationalFunction {
    type Output = Result<RationalFunction>;
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::normalize(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}
