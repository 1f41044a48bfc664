use super::poly::Polynomial;

/// Euler's totient, which is also `deg Φ_m`.
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// The cyclotomic polynomial `Φ_m`, built from `z^m - 1 = Π_{d | m} Φ_d`.
///
/// `Φ_1 = z - 1`; callers that prefer the `1 - z` orientation negate it.
pub fn cyclotomic(m: u64) -> Polynomial {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut zm = Polynomial::monomial(super::int(1), m as usize);
    zm = &zm - &Polynomial::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            zm = zm.div_exact(&cyclotomic(d)).expect("Φ_d divides z^m - 1");
        }
    }
    zm
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), Polynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), Polynomial::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), Polynomial::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), Polynomial::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), Polynomial::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..=30u64 {
            assert_eq!(cyclotomic(m).degree(), Some(euler_phi(m) as usize), "m={m}");
        }
    }
}
