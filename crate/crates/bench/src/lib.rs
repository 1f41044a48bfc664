//! Fixed inputs for the kernel benchmarks, built once per run.

use poincare_core::algebra::{expr::parse_rational_function, rat, Polynomial, Rational};
use poincare_core::catalog::{claimed_poincare, Params};
use poincare_core::jetflow::{Scenario, StratumCase};
use poincare_core::{RationalFunction, Result};

/// Claimed Poincare function of a high-dimensional catalog entry.
pub fn heavy_poincare() -> Result<RationalFunction> {
    claimed_poincare("almost-complex", &Params::n(8))
}

/// Polynomials of degrees 16 and 15 with a planted common factor of degree 6.
pub fn gcd_pair() -> (Polynomial, Polynomial) {
    let f = |s: &str| parse_rational_function(s).expect("literal").num().clone();
    let common = f("(1-z)^3(1+z+2z^2)(3-z)");
    let a = &common * &f("(2+z)^3(1+z^3)(5z^4-3)");
    let b = &common * &f("(1-2z)^2(7+z^5)(1+z)^2");
    (a, b)
}

/// Dense rational matrix with a known rank deficit.
pub fn rank_matrix(n: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = (0..n - 2)
        .map(|i| {
            (0..n)
                .map(|j| rat(((i * 7 + j * 13) % 17) as i64 - 8, ((i + j) % 5 + 1) as i64))
                .collect()
        })
        .collect();
    for r in 0..2 {
        let combo = rows[r]
            .iter()
            .zip(&rows[r + 1])
            .map(|(a, b)| a * rat(3, 2) - b)
            .collect();
        rows.push(combo);
    }
    rows
}

/// The scalar example's action and its generic stratum.
pub fn lie_example() -> Result<(Scenario, StratumCase)> {
    let scn = Scenario::builtin("lie-example")?;
    Ok((scn, StratumCase::generic("generic")))
}
