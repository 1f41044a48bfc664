//! Exact matrix rank by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;

/// Rank of a rational matrix given as rows. Rows may be ragged; missing
/// entries are zero.
///
/// Each row is first cleared of denominators (row scaling preserves rank),
/// then eliminated over the integers with Bareiss' exact-division update so
/// intermediate entries stay bounded by minors of the input.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| integer_row(r, ncols))
        .collect();
    bareiss_rank(&mut m, ncols)
}

fn integer_row(r: &[Rational], ncols: usize) -> Vec<BigInt> {
    let l = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut out: Vec<BigInt> = r.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    out.resize(ncols, BigInt::zero());
    out
}

/// Rank of an integer matrix; destroys `m`.
pub fn bareiss_rank(m: &mut [Vec<BigInt>], ncols: usize) -> usize {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = &pivot_row[c];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in (c + 1)..ncols {
                let v = &row[j] * piv - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = piv.clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn rank_basic() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![int(0), int(0)]]), 0);
        let m = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), int(1)],
        ];
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let m = vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(3, 2), int(1)],
            vec![int(0), rat(-7, 5)],
        ];
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn rank_needs_row_swap() {
        let m = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(rank(&m), 2);
    }
}
