//! Dimension counting for jets of structures under a diffeomorphism group.
//!
//! A [`CountingPlan`] encodes the standard orbit count: the number of pure
//! order `k` invariants is the symbol dimension `dim g_k`, minus the fiber
//! `Δ_{k+r}` of the group acting at that order, corrected by the change in
//! the stabilizer of a generic jet.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Signed;

use crate::algebra::{binomial, rational_to_integer, Rational};
use crate::error::{Error, Result};
use crate::hilbert::{fit_spec, HilbertSpec};

/// Horizon of assembled rows before the tail is fitted.
const ASSEMBLY_HORIZON: usize = 80;

fn c(m: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(m, k).expect("nonnegative upper index"))
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn delta(a: i64, b: i64) -> Rational {
    q((a == b) as i64)
}

/// `dim S^k T*` on an `n`-manifold.
pub fn dim_sym(n: i64, k: i64) -> Rational {
    c(n + k - 1, k)
}

/// `dim D^k = n C(n+k, k)`, order-0 block included.
pub fn dim_diff_group(n: i64, k: i64) -> Rational {
    q(n) * c(n + k, k)
}

/// `dim Δ_k = dim S^k T* ⊗ T`.
pub fn dim_delta(n: i64, k: i64) -> Rational {
    q(n) * c(n + k - 1, k)
}

/// Alternating sum `t0 - t1 + t2 - ...` of the terms of an exact complex.
pub fn euler_symbol_dim(term_dims: &[Rational]) -> Rational {
    term_dims.iter().enumerate().fold(
        q(0),
        |acc, (i, t)| if i % 2 == 0 { acc + t } else { acc - t },
    )
}

/// Named prolongation sequences `dim g_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolProfile {
    /// `so(n)` with translations: `[n, C(n,2), 0, ...]`.
    Orthogonal,
    /// `co(n)`: `[n, C(n,2)+1, n, 0, ...]`; `n = 2` is of infinite type.
    ConformalOrth,
    /// Prolongations of `gl(n, C)` acting on `R^{2n}`: `2n C(n+k, k+1)`.
    ComplexGl,
    /// Projective algebra: `[n, n^2, n, 0, ...]`.
    ProjectiveChain,
    /// Extra stabilizer of a generic 2D almost complex jet: `[0, 4, 2, 2, ...]`.
    Acs2Tilde,
}

impl FromStr for SymbolProfile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "orthogonal" => Self::Orthogonal,
            "conformal-orth" => Self::ConformalOrth,
            "complex-gl" => Self::ComplexGl,
            "projective-chain" => Self::ProjectiveChain,
            "acs2-tilde" => Self::Acs2Tilde,
            _ => return Err(Error::UnknownSymbol(s.to_string())),
        })
    }
}

impl SymbolProfile {
    pub fn dim(self, n: i64, k: i64) -> Rational {
        if k < 0 {
            return q(0);
        }
        match self {
            Self::Orthogonal => match k {
                0 => q(n),
                1 => c(n, 2),
                _ => q(0),
            },
            Self::ConformalOrth if n == 2 => q(2),
            Self::ConformalOrth => match k {
                0 => q(n),
                1 => c(n, 2) + q(1),
                2 => q(n),
                _ => q(0),
            },
            Self::ComplexGl => q(2 * n) * c(n + k, k + 1),
            Self::ProjectiveChain => match k {
                0 => q(n),
                1 => q(n * n),
                2 => q(n),
                _ => q(0),
            },
            Self::Acs2Tilde => match k {
                0 => q(0),
                1 => q(4),
                _ => q(2),
            },
        }
    }
}

/// Looks a profile up by name and evaluates it.
pub fn symbol_dim_profile(name: &str, n: i64, k: i64) -> Result<Rational> {
    Ok(name.parse::<SymbolProfile>()?.dim(n, k))
}

/// Which jets of the transformation group act at each order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupFiber {
    /// All diffeomorphisms: `Δ_j = S^j T* ⊗ T`.
    Diffeo,
    /// Symplectomorphisms through Hamiltonians: `Δ_j = S^j T*` (shifted by one
    /// through the Hamiltonian's order).
    Hamiltonian,
}

type DimFn = Arc<dyn Fn(i64) -> Rational + Send + Sync>;

/// Row formula `h_k = dim g_k - dim Δ_{k+r} + St(k) - St(k-1)` with
/// explicit overrides for exceptional rows.
///
/// `St(k)` is the dimension of the stabilizer of a generic `k`-jet inside the
/// group jets of order `k + r`; `St(-1)` counts the group jets of orders
/// `1 .. r-1` that fix a point, which lets the generic row also cover `k = 0`.
#[derive(Clone)]
pub struct CountingPlan {
    pub name: String,
    /// Dimension of the manifold the group acts on.
    pub dim: i64,
    pub fiber: GroupFiber,
    pub action_order: i64,
    pub symbol_dim: DimFn,
    pub stabilizer_dim: DimFn,
    pub overrides: BTreeMap<usize, Rational>,
}

impl fmt::Debug for CountingPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CountingPlan")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("fiber", &self.fiber)
            .field("action_order", &self.action_order)
            .field("overrides", &self.overrides)
            .finish_non_exhaustive()
    }
}

impl CountingPlan {
    pub fn new(
        name: impl Into<String>,
        dim: i64,
        fiber: GroupFiber,
        action_order: i64,
        symbol_dim: impl Fn(i64) -> Rational + Send + Sync + 'static,
        stabilizer_dim: impl Fn(i64) -> Rational + Send + Sync + 'static,
    ) -> Self {
        CountingPlan {
            name: name.into(),
            dim,
            fiber,
            action_order,
            symbol_dim: Arc::new(symbol_dim),
            stabilizer_dim: Arc::new(stabilizer_dim),
            overrides: BTreeMap::new(),
        }
    }

    pub fn with_override(mut self, k: usize, v: Rational) -> Self {
        self.overrides.insert(k, v);
        self
    }

    /// `dim Δ_j` for the plan's group.
    pub fn fiber_dim(&self, j: i64) -> Rational {
        match self.fiber {
            GroupFiber::Diffeo => dim_delta(self.dim, j),
            GroupFiber::Hamiltonian => dim_sym(self.dim, j),
        }
    }

    /// Raw assembled row, before the nonnegativity check.
    pub fn row(&self, k: usize) -> Rational {
        if let Some(v) = self.overrides.get(&k) {
            return v.clone();
        }
        let k = k as i64;
        (self.symbol_dim)(k) - self.fiber_dim(k + self.action_order) + (self.stabilizer_dim)(k)
            - (self.stabilizer_dim)(k - 1)
    }
}

/// Evaluates the plan's rows and packages them as a Hilbert spec.
pub fn assemble_hilbert(plan: &CountingPlan) -> Result<HilbertSpec> {
    let mut rows = Vec::with_capacity(ASSEMBLY_HORIZON + 1);
    for k in 0..=ASSEMBLY_HORIZON {
        let v = plan.row(k);
        if v.is_negative() || rational_to_integer(&v).is_none() {
            return Err(Error::InconsistentPlan(format!(
                "{}: row k={k} assembles to {v}",
                plan.name
            )));
        }
        rows.push(v);
    }
    fit_spec(&rows)
}

/// Catalog ids that ship a counting plan.
pub const PLAN_IDS: [&str; 9] = [
    "linear-connections",
    "symmetric-connections",
    "metric-connections",
    "fedosov",
    "projective-connections",
    "weyl",
    "einstein-weyl",
    "einstein",
    "almost-complex",
];

fn min_n(id: &str) -> i64 {
    match id {
        "fedosov" => 1,
        "einstein-weyl" => 3,
        "einstein" => 4,
        _ => 2,
    }
}

/// The counting plan for a catalog structure with parameter `n`.
pub fn shipped_plan(id: &str, n: i64) -> Result<CountingPlan> {
    if !PLAN_IDS.contains(&id) {
        return Err(Error::UnknownEntry(id.to_string()));
    }
    if n < min_n(id) {
        return Err(Error::OutOfValidity {
            id: id.to_string(),
            reason: format!("counting plan needs n >= {}, got {n}", min_n(id)),
        });
    }
    let name = format!("{id} n={n}");
    let plan = match id {
        "linear-connections" => {
            // connection components Γ^i_jk: n^3 per order, acted on from order 2
            let g = move |k| q(n * n * n) * c(n + k - 1, k);
            if n == 2 {
                CountingPlan::new(name, n, GroupFiber::Diffeo, 2, g, |k| match k {
                    -1 => q(4),
                    0 => q(2),
                    _ => q(0),
                })
            } else {
                CountingPlan::new(name, n, GroupFiber::Diffeo, 2, g, |_| q(0))
                    .with_override(0, q(n * n * n - n * n) - q(n) * c(n + 1, 2))
            }
        }
        "symmetric-connections" => CountingPlan::new(
            name,
            n,
            GroupFiber::Diffeo,
            2,
            move |k| q(n) * c(n + 1, 2) * c(n + k - 1, k),
            move |k| match k {
                -1 | 0 => q(n * n),
                1 => delta(n, 2),
                _ => q(0),
            },
        ),
        "metric-connections" => CountingPlan::new(
            name,
            n,
            GroupFiber::Diffeo,
            2,
            // metric values and first jet at order 0, then staggered with torsion
            move |k| {
                if k == 0 {
                    c(n + 1, 2) * q(n + 1) + q(n) * c(n, 2)
                } else {
                    c(n + 1, 2) * c(n + k, k + 1) + q(n) * c(n, 2) * c(n + k - 1, k)
                }
            },
            move |k| if k == -1 { q(n * n) } else { q(0) },
        ),
        "fedosov" => {
            let nn = 2 * n;
            CountingPlan::new(
                name,
                nn,
                GroupFiber::Hamiltonian,
                3,
                move |k| c(nn + 2, 3) * c(nn + k - 1, k),
                move |k| match k {
                    -1 | 0 => c(nn + 1, 2),
                    1 => delta(n, 1),
                    _ => q(0),
                },
            )
        }
        "projective-connections" => CountingPlan::new(
            name,
            n,
            GroupFiber::Diffeo,
            2,
            move |k| q((n - 1) * n * (n + 2)) / q(2) * c(n + k - 1, k),
            move |k| {
                let chain = SymbolProfile::ProjectiveChain;
                // cumulative stabilizer: projective algebra above order k+1
                let base = match k {
                    -1 => q(n * n),
                    0 => chain.dim(n, 1) + chain.dim(n, 2),
                    1 => chain.dim(n, 2),
                    _ => q(0),
                };
                base + q(4) * delta(n, 2) * q((k == 1 || k == 2) as i64)
            },
        ),
        "weyl" | "einstein-weyl" => {
            let ew = id == "einstein-weyl";
            let gp = move |k: i64| (c(n + 1, 2) - q(1)) * c(n + k - 1, k);
            let gpp = move |k: i64| q(n) * c(n + k - 1, k);
            CountingPlan::new(
                name,
                n,
                GroupFiber::Diffeo,
                2,
                move |k| {
                    if k == 0 {
                        return gp(0) + gp(1) + gpp(0);
                    }
                    let ricci = if ew { gp(k - 1) } else { q(0) };
                    gp(k + 1) + gpp(k) - ricci
                },
                move |k| match k {
                    -1 => q(n * n),
                    0 => c(n, 2) + q(1),
                    1 => delta(n, if ew { 3 } else { 2 }),
                    _ => q(0),
                },
            )
        }
        "einstein" => CountingPlan::new(
            name,
            n,
            GroupFiber::Diffeo,
            1,
            move |k| {
                let s = c(n + 1, 2);
                let terms = [
                    c(n + k - 1, k) * &s,
                    if k >= 2 {
                        c(n + k - 3, k - 2) * &s
                    } else {
                        q(0)
                    },
                    if k >= 3 {
                        c(n + k - 4, k - 3) * q(n)
                    } else {
                        q(0)
                    },
                ];
                euler_symbol_dim(&terms) + delta(k, 2)
            },
            move |k| match k {
                0 | 1 => c(n, 2),
                _ => q(0),
            },
        ),
        "almost-complex" => {
            let nn = 2 * n;
            CountingPlan::new(
                name,
                nn,
                GroupFiber::Diffeo,
                1,
                move |k| q(2 * n * n) * c(nn + k - 1, k),
                move |k| {
                    if k < 0 {
                        return q(0);
                    }
                    let mut v = SymbolProfile::ComplexGl.dim(n, k);
                    if n == 2 {
                        v += SymbolProfile::Acs2Tilde.dim(n, k);
                    }
                    if n == 3 && k == 1 {
                        v += q(2);
                    }
                    v
                },
            )
        }
        _ => unreachable!("checked against PLAN_IDS"),
    };
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions() {
        assert_eq!(dim_sym(3, 2), q(6));
        assert_eq!(dim_sym(2, 5), q(6));
        assert_eq!(dim_sym(7, 0), q(1));
        assert_eq!(dim_diff_group(2, 1), q(6));
        assert_eq!(dim_diff_group(4, 2), q(60));
        assert_eq!(dim_diff_group(1, 1), q(2));
        assert_eq!(dim_delta(2, 3), q(8));
        assert_eq!(dim_delta(3, 1), q(9));
        assert_eq!(dim_delta(5, 0), q(5));
    }

    #[test]
    fn euler_sums() {
        assert_eq!(euler_symbol_dim(&[q(200), q(40), q(4)]), q(164));
        assert_eq!(euler_symbol_dim(&[q(5)]), q(5));
        assert_eq!(euler_symbol_dim(&[q(3), q(3)]), q(0));
    }

    #[test]
    fn profiles() {
        assert_eq!(symbol_dim_profile("orthogonal", 3, 2).unwrap(), q(0));
        assert_eq!(symbol_dim_profile("complex-gl", 2, 1).unwrap(), q(12));
        assert_eq!(symbol_dim_profile("acs2-tilde", 2, 3).unwrap(), q(2));
        assert_eq!(symbol_dim_profile("projective-chain", 3, 1).unwrap(), q(9));
        assert!(matches!(
            symbol_dim_profile("spinor", 3, 1),
            Err(Error::UnknownSymbol(_))
        ));
    }

    #[test]
    fn empty_plan_is_zero() {
        let p = CountingPlan::new("empty", 3, GroupFiber::Diffeo, 1, |_| q(0), |_| q(0));
        // the bare row would be -dim Δ; an empty symbol has nothing to count
        assert!(matches!(
            assemble_hilbert(&p),
            Err(Error::InconsistentPlan(_))
        ));
        let p = CountingPlan::new("empty", 0, GroupFiber::Diffeo, 1, |_| q(0), |_| q(0));
        assert_eq!(assemble_hilbert(&p).unwrap(), HilbertSpec::zero());
    }

    #[test]
    fn linear_override_row() {
        let p = shipped_plan("linear-connections", 3).unwrap();
        assert_eq!(p.row(0), q(0));
        let p = shipped_plan("linear-connections", 4).unwrap();
        assert_eq!(p.row(0), q(8));
    }

    #[test]
    fn fedosov_surface() {
        let s = assemble_hilbert(&shipped_plan("fedosov", 1).unwrap()).unwrap();
        assert_eq!(s.h_value(2), 5.into());
        for k in 3..30 {
            assert_eq!(s.h_value(k), (3 * k).into());
        }
    }

    #[test]
    fn einstein_four() {
        let s = assemble_hilbert(&shipped_plan("einstein", 4).unwrap()).unwrap();
        let v: Vec<i64> = s
            .values(5)
            .iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect();
        assert_eq!(v, vec![0, 0, 5, 24, 42, 64]);
    }

    #[test]
    fn plan_validity() {
        assert!(matches!(
            shipped_plan("einstein", 3),
            Err(Error::OutOfValidity { .. })
        ));
        assert!(matches!(
            shipped_plan("riemannian", 3),
            Err(Error::UnknownEntry(_))
        ));
    }
}
