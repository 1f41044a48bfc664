use num_traits::Zero;

use super::poly::Polynomial;
use super::rational::Rational;

/// Coefficients of `z^0 ..= z^K` of a power series truncated at order `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Panics on an empty coefficient vector (the order would be undefined).
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "power series needs at least one coefficient"
        );
        PowerSeries { coeffs }
    }

    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        PowerSeries::new((0..=order).map(|k| p.coeff(k)).collect())
    }

    /// Truncation order `K`; the series holds `K + 1` coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul_truncated(&self, other: &PowerSeries) -> PowerSeries {
        let k = self.order().min(other.order());
        let mut out = vec![Rational::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(k + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries::new(out)
    }

    /// Running sums `Σ_{i<=k} c_i`, i.e. the series times `1/(1-z)`.
    pub fn partial_sums(&self) -> PowerSeries {
        let mut acc = Rational::zero();
        PowerSeries::new(
            self.coeffs
                .iter()
                .map(|c| {
                    acc += c;
                    acc.clone()
                })
                .collect(),
        )
    }
}
