//! Per-entry Hilbert functions and claimed Poincare functions.
//!
//! Hilbert functions are written as closures `k -> h_k` and packaged by
//! [`HilbertSpec::from_fn`], which interpolates the tail and re-checks the
//! closure well past the onset. Claimed Poincare functions are written in the
//! expression language of [`crate::algebra::expr`] and normalized on parse,
//! so apparent poles at `z = 0` cancel or surface as a finding.

use crate::algebra::expr::parse_rational_function;
use crate::algebra::{binomial, Rational, RationalFunction};
use crate::error::Result;
use crate::hilbert::HilbertSpec;

use super::Params;

fn c(m: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(m, k).expect("nonnegative upper index"))
}

fn ci(m: i64, k: i64) -> i64 {
    crate::algebra::binomial_i64(m, k)
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn frac(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn delta(a: i64, b: i64) -> Rational {
    q((a == b) as i64)
}

/// Hilbert function of the entry, or `None` when only `P` is known.
pub(super) fn hilbert(id: &str, p: &Params) -> Option<Result<HilbertSpec>> {
    let n = p.get("n").unwrap_or(0);
    let spec = |k0: usize, deg: usize, h: Box<dyn Fn(i64) -> Rational>| {
        HilbertSpec::from_fn(k0, deg, |k| h(k as i64))
    };
    let r = match id {
        "ode-general" => spec(
            6,
            2,
            Box::new(|k| match k {
                5 => q(3),
                k if k > 5 => c(k, 2) - q(4),
                _ => q(0),
            }),
        ),
        "ode-cubic" => spec(
            4,
            1,
            Box::new(|k| if k >= 4 { q(2 * (k - 1)) } else { q(0) }),
        ),
        "ode-lie-form" => spec(
            5,
            1,
            Box::new(|k| match k {
                4 => q(2),
                k if k >= 5 => q(k - 1),
                _ => q(0),
            }),
        ),
        "riemannian" => spec(4, n as usize, Box::new(move |k| riemannian_h(n, k))),
        "metrizable-connections" => spec(3, n as usize, Box::new(move |k| riemannian_h(n, k + 1))),
        "kaehler" if n == 1 => spec(4, 2, Box::new(|k| riemannian_h(2, k))),
        "kaehler" => spec(
            3,
            2 * n as usize,
            Box::new(move |k| match k {
                0 | 1 => q(0),
                2 => frac(n * n * (n - 1) * (n + 3), 4),
                _ => {
                    c(2 * n + k + 1, k + 2)
                        - q(2) * c(n + k + 1, k + 2)
                        - q(2 * n) * c(n + k, k + 1)
                }
            }),
        ),
        "einstein" if n <= 3 => HilbertSpec::finite(&[0, 0, 1]),
        "einstein" => spec(
            3,
            n as usize,
            Box::new(move |k| match k {
                0 | 1 => q(0),
                2 => frac((n * n - 1) * (n * n - 12), 12),
                _ => {
                    frac(
                        (k - 1) * n * (n + k - 1) * (n + 2 * k - 2),
                        2 * (k + 1) * (n - 2),
                    ) * c(n + k - 4, k)
                }
            }),
        ),
        "self-dual-metrics" => spec(
            3,
            3,
            Box::new(|k| match k {
                0 | 1 => q(0),
                2 => q(9),
                _ => frac((k - 1) * (k * k + 25 * k + 36), 6),
            }),
        ),
        "hyper-kaehler" => spec(
            3,
            4 * n as usize,
            Box::new(move |k| match k {
                0 | 1 => q(0),
                2 => frac(n * (n + 3) * (2 * n - 1) * (2 * n + 1), 6),
                _ => {
                    let sum = (0..=n).fold(q(0), |acc, i| acc + c(2 * n + k - i, k) * q(n - i));
                    q(2) * sum - c(2 * n + k + 1, k + 2) - q(2) * c(n + k + 1, k + 2)
                }
            }),
        ),
        "linear-connections" if n == 2 => spec(
            2,
            1,
            Box::new(|k| match k {
                0 => q(0),
                1 => q(6),
                _ => q(6 * k + 2),
            }),
        ),
        "linear-connections" => spec(
            1,
            n as usize,
            Box::new(move |k| match k {
                0 => frac(n * n * (n - 3), 2),
                _ => q(n * n * n) * c(n + k - 1, k) - q(n) * c(n + k + 1, k + 2),
            }),
        ),
        "symmetric-connections" => spec(
            3,
            n as usize,
            Box::new(move |k| match k {
                0 => q(0),
                1 => frac(n * n * (n * n - 4), 3) + delta(2, n),
                2 => q(n) * c(n + 1, 2) * c(n + 1, 2) - q(n) * c(n + 3, 4) - delta(2, n),
                _ => q(n) * c(n + 1, 2) * c(n + k - 1, n - 1) - q(n) * c(n + k + 1, n - 1),
            }),
        ),
        "metric-connections" => spec(
            1,
            n as usize,
            Box::new(move |k| match k {
                0 => frac(n * (n - 1) * (n - 1), 2),
                _ => {
                    c(n + 1, 2) * c(n + k, k + 1) + q(n) * c(n, 2) * c(n + k - 1, k)
                        - q(n) * c(n + k + 1, k + 2)
                }
            }),
        ),
        "fedosov" => spec(
            3,
            2 * n as usize,
            Box::new(move |k| match k {
                0 => q(0),
                1 => frac((n - 1) * n * (2 * n + 1) * (2 * n + 3), 2) + delta(n, 1),
                2 => frac(n * (n + 1) * (3 * n + 2) * (4 * n * n - 1), 5) - delta(1, n),
                _ => c(2 * n + 2, 3) * c(2 * n + k - 1, k) - c(2 * n + k + 2, k + 3),
            }),
        ),
        "projective-connections" if n == 2 => spec(
            4,
            1,
            Box::new(|k| if k >= 4 { q(2 * (k - 1)) } else { q(0) }),
        ),
        "projective-connections" => spec(
            3,
            n as usize,
            Box::new(move |k| match k {
                0 => q(0),
                1 => frac(n * n * (n * n - 7), 3),
                2 => frac(n * (n - 2) * (5 * n * n * n + 16 * n * n + 15 * n + 12), 24),
                _ => frac((n - 1) * n * (n + 2), 2) * c(n + k - 1, k) - q(n) * c(n + k + 1, k + 2),
            }),
        ),
        "conformal" if n == 3 => spec(
            5,
            2,
            Box::new(|k| match k {
                3 => q(1),
                4 => q(9),
                k if k >= 5 => q(k * k - 4),
                _ => q(0),
            }),
        ),
        "conformal" => spec(
            4,
            n as usize,
            Box::new(move |k| match k {
                0 | 1 => q(0),
                2 => frac(n * n * (n * n - 1), 12) - q(n * n + 1),
                3 => frac(n * (n.pow(4) + 2 * n.pow(3) - 5 * n * n - 14 * n - 32), 24),
                _ => (c(n + 1, 2) - q(1)) * c(n + k - 1, k) - q(n) * c(n + k, k + 1),
            }),
        ),
        "weyl" => spec(
            3,
            n as usize,
            Box::new(move |k| match k {
                0 => q(0),
                1 => frac((n * n - 4) * (n * n + 3), 12) + delta(2, n),
                2 => frac(n * (n * n - 1) * (n * n + 2 * n + 8), 24) - delta(2, n),
                _ => {
                    (c(n + 1, 2) - q(1)) * c(n + k, k + 1) + q(n) * c(n + k - 1, k)
                        - q(n) * c(n + k + 1, k + 2)
                }
            }),
        ),
        "einstein-weyl" => spec(
            3,
            n as usize,
            Box::new(move |k| match k {
                0 => q(0),
                1 => frac((n - 3) * n * (n + 1) * (n + 2), 12) + delta(n, 3),
                2 => frac(n * (n - 1) * (n - 2) * (n * n + 5 * n + 8), 24) - delta(n, 3),
                _ => {
                    (c(n + 1, 2) - q(1)) * (c(n + k, k + 1) - c(n + k - 2, k - 1))
                        + q(n) * c(n + k - 1, k)
                        - q(n) * c(n + k + 1, k + 2)
                }
            }),
        ),
        "self-dual-conformal" => spec(
            4,
            2,
            Box::new(|k| match k {
                2 => q(1),
                3 => q(13),
                k if k >= 4 => q(3 * k * k - 7),
                _ => q(0),
            }),
        ),
        "almost-complex" if n == 2 => spec(
            3,
            4,
            Box::new(|k| match k {
                0 | 1 => q(0),
                2 => q(2),
                _ => q(8) * c(k + 3, k) - q(4) * c(k + 4, k + 1) + q(4),
            }),
        ),
        "almost-complex" => spec(
            3,
            2 * n as usize,
            Box::new(move |k| {
                if k == 0 {
                    return q(0);
                }
                q(2 * n * n) * c(2 * n + k - 1, k) - q(2 * n) * c(2 * n + k, k + 1)
                    + q(2 * n) * c(n + k, k + 1)
                    - q(2 * n) * c(n + k - 1, k)
                    + q(2) * (delta(k, 1) - delta(k, 2)) * delta(n, 3)
            }),
        ),
        _ => return None,
    };
    Some(r)
}

fn riemannian_h(n: i64, k: i64) -> Rational {
    if n == 2 {
        return match k {
            0 | 1 => q(0),
            2 | 3 => q(1),
            _ => q(k - 1),
        };
    }
    match k {
        0 | 1 => q(0),
        2 => frac(ci(n, 3) * (n + 3), 2),
        _ => c(n + 1, 2) * c(n + k - 1, k) - q(n) * c(n + k, k + 1),
    }
}

fn riemannian_p(n: i64) -> String {
    if n == 2 {
        return "z^2(1-z+2z^2-z^3)/(1-z)^2".into();
    }
    format!(
        "{n}/z + {a}(1-z^2) - ({n}/z - {b})/(1-z)^{n}",
        a = ci(n, 2),
        b = ci(n + 1, 2)
    )
}

/// Closed-form Poincare function source text of the entry.
pub(super) fn claimed_source(id: &str, p: &Params) -> String {
    let n = p.get("n").unwrap_or(0);
    match id {
        "ode-general" => "z^5(3+2z-7z^2+3z^3)/(1-z)^3".into(),
        "ode-cubic" => "2z^4(3-2z)/(1-z)^2".into(),
        "ode-lie-form" => "z^4(2-z^2)/(1-z)^2".into(),
        "riemannian" => riemannian_p(n),
        "einstein" if n <= 3 => "z^2".into(),
        "einstein" => format!(
            "{n}(z+1)({n1}z-2(z^2+1))/(2z(1-z)^{nm1}) - {a}(z^2-1) + {n}/z + z^2",
            n1 = n + 1,
            nm1 = n - 1,
            a = ci(n, 2)
        ),
        "self-dual-metrics" => "z^2(9+4z-30z^2+24z^3-6z^4)/(1-z)^4".into(),
        "kaehler" if n == 1 => riemannian_p(2),
        "kaehler" => format!(
            "1/(z^2(1-z)^{n2}) - 2({n}z+1)/(z^2(1-z)^{n}) + {nn}(1-z^2) + ({n2}z+1)/z^2",
            n2 = 2 * n,
            nn = n * n
        ),
        "hyper-kaehler" => format!(
            "{n2}/(z(1-z)^{n21}) - 3/(z^2(1-z)^{n2}) - {a}(z^2-1) + ({n4}z+3)/z^2",
            n2 = 2 * n,
            n21 = 2 * n + 1,
            n4 = 4 * n,
            a = n * (2 * n + 1)
        ),
        "linear-connections" if n == 2 => "2z(3+z-z^2)/(1-z)^2".into(),
        "linear-connections" => format!(
            "{n}({nn}z^2-1)/(z^2(1-z)^{n}) - {nn} + {n}({n}z+1)/z^2",
            nn = n * n
        ),
        "symmetric-connections" if n == 2 => "z(1+5z-z^2-z^3)/(1-z)^2".into(),
        "symmetric-connections" => format!(
            "({a}z^2-2){n}/(2z^2(1-z)^{n}) - {nn}z + {n}(1+{n}z)/z^2",
            a = n * (n + 1),
            nn = n * n
        ),
        "metric-connections" => format!(
            "({n} - {a}(z^2-z))/z^2 - ({n2} - {b}z - {c}z^2)/(2z^2(1-z)^{n})",
            a = ci(n, 2),
            n2 = 2 * n,
            b = n * (n + 1),
            c = n * n * (n - 1)
        ),
        "metric-connections-skew-torsion" => {
            let st = match n {
                3 | 4 => 3,
                5 => 2,
                _ => 0,
            };
            format!(
                "({n} - {a}(z^2-z))/z^2 - ({n} - {b}z - {c}z^2)/(z^2(1-z)^{n}) + {st}(1-z)",
                a = ci(n, 2),
                b = ci(n + 1, 2),
                c = ci(n, 3)
            )
        }
        "metrizable-connections" => format!("({})/z", riemannian_p(n)),
        "fedosov" if n == 1 => "z(1+3z-z^3)/(1-z)^2".into(),
        "fedosov" => format!(
            "({a}z^3-3)/(3z^3(1-z)^{n2}) + (1+{n2}z-{b}z^2(z^2-1))/z^3",
            a = 2 * n * (2 * n * n + 3 * n + 1),
            n2 = 2 * n,
            b = n * (2 * n + 1)
        ),
        "projective-connections" if n == 2 => "2z^4(3-2z)/(1-z)^2".into(),
        "projective-connections" => format!(
            "{n}/(1-z)^{n}({a}-(1+z^2)/z^2) - {n}(z^2+{n}z-1-({n}z+1)/z^2)",
            a = ci(n + 1, 2)
        ),
        "conformal" if n == 3 => "z^3(1+z)(1+5z-8z^2+3z^3)/(1-z)^3".into(),
        "conformal" => format!(
            "({a}z-2({n}+z))/(2z(1-z)^{n}) + {n}/z + ({b}+{n}z)(1-z^2)",
            a = (n + 1) * n,
            b = 1 + ci(n, 2)
        ),
        "weyl" => format!(
            "({n}z^2+{a}z-{n})/(z^2(1-z)^{n}) - ({b}z(z^2-1)-{n})/z^2 - {d}z(z-1)",
            a = ci(n + 1, 2) - 1,
            b = ci(n, 2) + 1,
            d = (n == 2) as i64
        ),
        "einstein-weyl" if n == 3 => "z(1+5z-z^2-z^3)/(1-z)^2".into(),
        "einstein-weyl" => format!(
            "({n}z^2-{a}z(z^2-1)-{n})/(z^2(1-z)^{n}) - ({b}z(z^2-1)-{n})/z^2",
            a = ci(n + 1, 2) - 1,
            b = ci(n, 2) + 1
        ),
        "self-dual-conformal" => "z^2(1+10z+5z^2-17z^3+7z^4)/(1-z)^3".into(),
        "almost-complex" if n == 2 => "2z^2(1+8z-12z^2+6z^3-z^4)/(1-z)^4".into(),
        "almost-complex" if n == 3 => "2z(1+26z-36z^2+10z^3+17z^4-18z^5+7z^6-z^7)/(1-z)^6".into(),
        "almost-complex" => format!(
            "{n2}({n}z-1)/(z(1-z)^{n2}) + {n2}/(z(1-z)^{nm1}) + {n2}",
            n2 = 2 * n,
            nm1 = n - 1
        ),
        "hamiltonian-critical" => format!("1/(1-z^2)^{n}"),
        "poincare-dulac-nonresonant" => "2z".into(),
        "poincare-dulac-node" => format!("z + z^{}", p.get("m").unwrap_or(2)),
        "poincare-dulac-saddle" => {
            let m = p.get("p").unwrap_or(1) + p.get("q").unwrap_or(1);
            format!("z + z^{} + z^{}", m + 1, 2 * m + 1)
        }
        "poincare-dulac-saddle-node" => {
            let m = p.get("m").unwrap_or(1);
            format!("(z - z^{})/(1-z) + z^{}", m + 1, 2 * m + 1)
        }
        "takens-bogdanov" => "(1+z+z^2-z^4)z^2/(1-z^3)".into(),
        other => unreachable!("no Poincare function for `{other}`"),
    }
}

pub(super) fn claimed(id: &str, p: &Params) -> Result<RationalFunction> {
    parse_rational_function(&claimed_source(id, p))
}

/// Ids with Rust constructors; the data file must list exactly these.
pub(super) const KNOWN_IDS: [&str; 26] = [
    "ode-general",
    "ode-cubic",
    "ode-lie-form",
    "riemannian",
    "einstein",
    "self-dual-metrics",
    "kaehler",
    "hyper-kaehler",
    "linear-connections",
    "symmetric-connections",
    "metric-connections",
    "metric-connections-skew-torsion",
    "metrizable-connections",
    "fedosov",
    "projective-connections",
    "conformal",
    "weyl",
    "einstein-weyl",
    "self-dual-conformal",
    "almost-complex",
    "hamiltonian-critical",
    "poincare-dulac-nonresonant",
    "poincare-dulac-node",
    "poincare-dulac-saddle",
    "poincare-dulac-saddle-node",
    "takens-bogdanov",
];
