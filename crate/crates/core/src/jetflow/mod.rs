//! Jet prolongation engine.
//!
//! Generator families are vector fields on `J^0` whose coefficients are
//! linear in the jets of arbitrary functions. Prolonging them and taking
//! exact ranks at random rational points of a stratum counts the differential
//! invariants of each order on that stratum.

pub mod field;
pub mod poly;
pub mod scenario;
pub mod space;
pub mod strata;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::{Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::hilbert::{gf_from_hilbert, HilbertSpec};

pub use field::{orbit_rank, prolong, total_derivative, ParamField, ProlongedField};
pub use poly::{JetPoly, MultiIndex, Var};
pub use scenario::{InvariantSpec, Naming, Scenario, StratumSpec};
pub use space::{JetPoint, JetSpace};
pub use strata::{
    annihilation_check, generic_rank, stratum_codim_sequence, Action, CodimSequence, JetRational,
    Sampler, StratumCase,
};

pub const DEFAULT_SEED: u64 = 20_240_601;
/// Default horizon of the stratification table.
pub const LIE_TABLE_KMAX: u32 = 7;
/// Cost guard for the metric lift.
pub const METRIC2D_KMAX: u32 = 4;
/// Equal trailing values needed to accept a constant tail.
pub const TAIL_WITNESSES: usize = 3;

/// Constant tail fit: the last [`TAIL_WITNESSES`] values agree and the tail
/// starts where that run begins. Evidence up to the horizon only.
pub fn fit_constant_tail(h: &[i64]) -> Result<HilbertSpec> {
    let short = || {
        Error::HorizonTooShort(format!(
            "need {TAIL_WITNESSES} equal trailing values in {h:?}"
        ))
    };
    let last = *h.last().ok_or_else(short)?;
    let start = h.iter().rposition(|&v| v != last).map_or(0, |i| i + 1);
    if h.len() - start < TAIL_WITNESSES {
        return Err(short());
    }
    if h.iter().any(|&v| v < 0) {
        return Err(Error::InvalidSpec("negative invariant count".into()));
    }
    let exceptions: BTreeMap<usize, BigInt> = h[..start]
        .iter()
        .enumerate()
        .map(|(k, &v)| (k, BigInt::from(v)))
        .collect();
    HilbertSpec::new(
        exceptions,
        start,
        Polynomial::constant(Rational::from_integer(last.into())),
    )
}

/// One row of a stratification table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumRow {
    pub label: String,
    /// `h_0 ..= h_kmax`.
    pub h: Vec<i64>,
    pub p: RationalFunction,
    pub expected_p: Option<RationalFunction>,
    /// `Some(k_max)` when `p` comes from a finite-horizon fit, `None` when it
    /// is exact.
    pub verified_to: Option<u32>,
}

impl StratumRow {
    pub fn matches_expected(&self) -> Option<bool> {
        self.expected_p.as_ref().map(|e| *e == self.p)
    }
}

/// Runs every stratum of a scenario to `k_max` and fits its Poincare function.
pub fn strata_table(scn: &Scenario, k_max: u32, seed: u64) -> Result<Vec<StratumRow>> {
    scn.strata
        .par_iter()
        .map(|s| {
            let seq = stratum_codim_sequence(&scn.action, &s.case, k_max, seed)?;
            let spec = fit_constant_tail(&seq.h)?;
            Ok(StratumRow {
                label: s.case.label.clone(),
                h: seq.h,
                p: gf_from_hilbert(&spec),
                expected_p: s.expected_p.clone(),
                verified_to: Some(k_max),
            })
        })
        .collect()
}

/// The stratification of `u(x, y)` under `f(x,y)∂x, ∂y, ∂u`, plus the
/// terminal stratum where only base translations act (`h_k = 1`, `k >= 1`).
pub fn lie_example_table() -> Result<Vec<StratumRow>> {
    lie_example_table_with(LIE_TABLE_KMAX, DEFAULT_SEED)
}

pub fn lie_example_table_with(k_max: u32, seed: u64) -> Result<Vec<StratumRow>> {
    let scn = Scenario::builtin("lie-example")?;
    let mut rows = strata_table(&scn, k_max, seed)?;
    let z = RationalFunction::z();
    let tail = (&z * &RationalFunction::pole_at_one(1)).clone();
    rows.push(StratumRow {
        label: "Sinf".into(),
        h: (0..=k_max).map(|k| i64::from(k >= 1)).collect(),
        p: tail.clone(),
        expected_p: Some(tail),
        verified_to: None,
    });
    Ok(rows)
}

/// Invariant counts `h_0 ..= h_kmax` for metrics on the plane.
pub fn metric2d_case(k_max: u32, seed: u64) -> Result<Vec<i64>> {
    if k_max > METRIC2D_KMAX {
        return Err(Error::UnsupportedArgument(format!(
            "metric lift is limited to k_max <= {METRIC2D_KMAX}"
        )));
    }
    let scn = Scenario::builtin("metric2d")?;
    let generic = &scn.strata[0].case;
    Ok(
        stratum_codim_sequence(&scn.action, generic, k_max.max(1), seed)?.h[..=k_max as usize]
            .to_vec(),
    )
}

/// Outcome of checking one candidate invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantOutcome {
    pub label: String,
    pub stratum: String,
    pub expr: String,
    pub expect: Option<bool>,
    pub annihilated: bool,
}

impl InvariantOutcome {
    pub fn as_expected(&self) -> bool {
        self.expect.is_none_or(|e| e == self.annihilated)
    }
}

pub fn invariant_checks(scn: &Scenario, seed: u64) -> Result<Vec<InvariantOutcome>> {
    scn.invariants
        .par_iter()
        .map(|inv| {
            let case = &scn.stratum(&inv.stratum)?.case;
            Ok(InvariantOutcome {
                label: inv.label.clone(),
                stratum: inv.stratum.clone(),
                expr: inv.source.clone(),
                expect: inv.expect,
                annihilated: annihilation_check(&scn.action, &inv.expr, case, seed)?,
            })
        })
        .collect()
}

/// Orbit rank and invariant count on one stratum of `J^0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitStratum {
    pub label: String,
    pub dim: usize,
    pub rank: usize,
    pub invariants: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionReport {
    pub strata: Vec<OrbitStratum>,
    pub checks: Vec<InvariantOutcome>,
}

/// Orbits of `span{2r∂r + s∂s, r∂s + 2s∂t}` on `R^3`.
pub fn distribution_example() -> Result<DistributionReport> {
    let scn = Scenario::builtin("distribution3d")?;
    let strata = scn
        .strata
        .iter()
        .map(|s| {
            let dim = s.case.dim(&scn.action.space(0));
            let rank = strata::generic_rank(&scn.action, &s.case, 0, DEFAULT_SEED)?;
            Ok(OrbitStratum {
                label: s.case.label.clone(),
                dim,
                rank,
                invariants: dim - rank,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DistributionReport {
        strata,
        checks: invariant_checks(&scn, DEFAULT_SEED)?,
    })
}
