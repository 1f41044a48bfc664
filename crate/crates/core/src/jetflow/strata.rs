//! Strata of jet spaces: generic sampling, invariant counts and invariant checks.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::Rational;
use crate::error::{Error, Result};

use super::field::{default_cutoff, orbit_rank_prolonged, prolong, ParamField, ProlongedField};
use super::poly::{JetPoly, LinearForm, Var};
use super::space::{JetPoint, JetSpace};

/// Numerators and denominators of sampled coordinates stay within this bound.
pub const SAMPLE_BOUND: i64 = 20;
/// Points per annihilation check.
pub const ANNIHILATION_POINTS: usize = 20;
const RETRIES: usize = 200;

/// How generic points are drawn.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Sampler {
    #[default]
    Uniform,
    /// Order-0 fiber coordinates `(g11, g12, g22)` of a positive-definite
    /// symmetric 2x2 matrix.
    PositiveDefinite([Var; 3]),
}

/// A group action given by generator families on `J^0 = R^p x R^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub p: usize,
    pub q: usize,
    pub fields: Vec<ParamField>,
    pub sampler: Sampler,
}

impl Action {
    pub fn new(p: usize, q: usize, fields: Vec<ParamField>, sampler: Sampler) -> Result<Self> {
        if fields.iter().any(|f| f.p() != p || f.q() != q) {
            return Err(Error::Scenario(
                "generator does not match the bundle shape".into(),
            ));
        }
        Ok(Action {
            p,
            q,
            fields,
            sampler,
        })
    }

    pub fn space(&self, k: u32) -> JetSpace {
        JetSpace::new(self.p, self.q, k)
    }

    pub fn prolong(&self, k: u32) -> Result<Vec<ProlongedField>> {
        self.fields.iter().map(|f| prolong(f, k)).collect()
    }
}

/// Coordinate stratum: `equalities` vanish, `inequations` do not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumCase {
    pub label: String,
    pub equalities: Vec<Var>,
    pub inequations: Vec<Var>,
}

impl StratumCase {
    pub fn new(
        label: impl Into<String>,
        equalities: Vec<Var>,
        inequations: Vec<Var>,
    ) -> Result<Self> {
        let label = label.into();
        if equalities.iter().any(|v| inequations.contains(v)) {
            return Err(Error::Scenario(format!(
                "{label}: equalities and inequations overlap"
            )));
        }
        if equalities.iter().chain(&inequations).any(Var::is_param) {
            return Err(Error::Scenario(format!(
                "{label}: strata are cut out by jet coordinates"
            )));
        }
        Ok(StratumCase {
            label,
            equalities,
            inequations,
        })
    }

    /// The whole jet space.
    pub fn generic(label: impl Into<String>) -> Self {
        StratumCase {
            label: label.into(),
            equalities: Vec::new(),
            inequations: Vec::new(),
        }
    }

    /// Dimension of the stratum inside `J^k`.
    pub fn dim(&self, space: &JetSpace) -> usize {
        space.dim() - self.equalities.iter().filter(|v| space.contains(v)).count()
    }
}

/// Deterministic generator for `(seed, k)`.
pub fn rng_for(seed: u64, k: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ u64::from(k))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.random_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
    let den = rng.random_range(1..=SAMPLE_BOUND);
    Rational::new(num.into(), den.into())
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A random rational point of the stratum in `J^k`.
pub fn sample_point(
    action: &Action,
    case: &StratumCase,
    k: u32,
    rng: &mut ChaCha8Rng,
) -> Result<JetPoint> {
    let space = action.space(k);
    let mut values = std::collections::BTreeMap::new();
    for c in space.coords() {
        let v = if case.equalities.contains(&c) {
            Rational::zero()
        } else if case.inequations.contains(&c) {
            random_nonzero(rng)
        } else {
            random_rational(rng)
        };
        values.insert(c, v);
    }
    if let Sampler::PositiveDefinite(g) = &action.sampler {
        if g.iter()
            .any(|v| case.equalities.contains(v) || !space.contains(v))
        {
            return Err(Error::Scenario(
                "positive-definite sampler on constrained coordinates".into(),
            ));
        }
        let (g11, g12, g22) = loop {
            let a = random_rational(rng).abs() + Rational::one();
            let b = random_rational(rng);
            let c = random_rational(rng).abs() + Rational::one();
            if &a * &c - &b * &b > Rational::zero() {
                break (a, b, c);
            }
        };
        values.insert(g[0].clone(), g11);
        values.insert(g[1].clone(), g12);
        values.insert(g[2].clone(), g22);
    }
    JetPoint::from_map(space, values)
}

/// Components along the defining coordinates vanish at `point`.
fn assert_tangent(fields: &[ProlongedField], case: &StratumCase, point: &JetPoint) -> Result<()> {
    for f in fields {
        for v in case.equalities.iter().filter(|v| f.space().contains(v)) {
            let form = f.component(v).eval_linear(|w| point.get(w))?;
            if !form.is_empty() {
                return Err(Error::NonInvariantStratum(format!(
                    "{}: a prolonged generator moves {v:?}",
                    case.label
                )));
            }
        }
    }
    Ok(())
}

/// Generic orbit rank on the stratum at order `k`: maximum over three
/// samples, confirmed by three more when the first three disagree.
pub fn generic_rank(action: &Action, case: &StratumCase, k: u32, seed: u64) -> Result<usize> {
    let fields: Vec<ProlongedField> = action.prolong(k)?;
    generic_rank_prolonged(action, &fields, case, k, seed)
}

fn generic_rank_prolonged(
    action: &Action,
    fields: &[ProlongedField],
    case: &StratumCase,
    k: u32,
    seed: u64,
) -> Result<usize> {
    let mut rng = rng_for(seed, k);
    let cutoff = default_cutoff(&action.fields, k);
    let draw = |rng: &mut ChaCha8Rng| -> Result<usize> {
        let pt = sample_point(action, case, k, rng)?;
        assert_tangent(fields, case, &pt)?;
        orbit_rank_prolonged(fields, &pt, cutoff)
    };
    let first: Vec<usize> = (0..3).map(|_| draw(&mut rng)).collect::<Result<_>>()?;
    let max = *first.iter().max().expect("three samples");
    if first.iter().all(|&r| r == max) {
        return Ok(max);
    }
    let more: Vec<usize> = (0..3).map(|_| draw(&mut rng)).collect::<Result<_>>()?;
    if more.iter().any(|&r| r > max) {
        return Err(Error::GenericityFailure(format!(
            "{} at order {k}: ranks {first:?} then {more:?}",
            case.label
        )));
    }
    Ok(max)
}

/// Invariant counts on a stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodimSequence {
    /// `s_k`: codimension of generic orbits inside the stratum in `J^k`.
    pub s: Vec<i64>,
    /// `h_k = s_k - s_{k-1}`.
    pub h: Vec<i64>,
}

pub fn stratum_codim_sequence(
    action: &Action,
    case: &StratumCase,
    k_max: u32,
    seed: u64,
) -> Result<CodimSequence> {
    if k_max < 1 {
        return Err(Error::UnsupportedArgument(
            "k_max must be at least 1".into(),
        ));
    }
    let top = action.prolong(k_max)?;
    let s: Vec<i64> = (0..=k_max)
        .into_par_iter()
        .map(|k| {
            let fields: Vec<ProlongedField> = top.iter().map(|f| f.truncate(k)).collect();
            let rank = generic_rank_prolonged(action, &fields, case, k, seed)?;
            Ok(case.dim(&action.space(k)) as i64 - rank as i64)
        })
        .collect::<Result<_>>()?;
    let h = s
        .iter()
        .enumerate()
        .map(|(k, &v)| if k == 0 { v } else { v - s[k - 1] })
        .collect();
    Ok(CodimSequence { s, h })
}

/// Quotient of jet polynomials, kept unreduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetRational {
    pub num: JetPoly,
    pub den: JetPoly,
}

impl JetRational {
    pub fn new(num: JetPoly, den: JetPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(JetRational { num, den })
    }

    pub fn from_poly(p: JetPoly) -> Self {
        JetRational {
            num: p,
            den: JetPoly::one(),
        }
    }

    /// Highest fiber order that occurs.
    pub fn order(&self) -> u32 {
        self.num
            .fiber_order()
            .max(self.den.fiber_order())
            .unwrap_or(0)
    }
}

fn add_scaled(acc: &mut LinearForm, form: &LinearForm, w: &Rational) {
    for (key, v) in form {
        let slot = acc.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += v * w;
    }
}

/// `X(I) = 0` for every generator and every parameter jet, at
/// [`ANNIHILATION_POINTS`] seeded points of the stratum.
pub fn annihilation_check(
    action: &Action,
    invariant: &JetRational,
    case: &StratumCase,
    seed: u64,
) -> Result<bool> {
    let k = invariant.order();
    let space = action.space(k);
    for v in invariant.num.vars().iter().chain(&invariant.den.vars()) {
        if !space.contains(v) {
            return Err(Error::Scenario(format!("{v:?} is not a jet coordinate")));
        }
    }
    let fields = action.prolong(k)?;
    let mut rng = rng_for(seed, k);
    for _ in 0..ANNIHILATION_POINTS {
        let pt = (0..RETRIES)
            .map(|_| sample_point(action, case, k, &mut rng))
            .find(|pt| match pt {
                Ok(pt) => !matches!(invariant.den.eval(|v| pt.get(v)), Ok(d) if d.is_zero()),
                Err(_) => true,
            })
            .ok_or_else(|| Error::BadSample(format!("denominator vanishes on {}", case.label)))??;
        for f in &fields {
            if !lie_derivative_forms(f, invariant, &pt)?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Numerator `Σ_c X_c (N_c D - N D_c)` of `X(N/D)` at a point, as a linear
/// form in the parameters.
pub fn lie_derivative_forms(
    field: &ProlongedField,
    invariant: &JetRational,
    point: &JetPoint,
) -> Result<LinearForm> {
    let d = invariant.den.eval(|v| point.get(v))?;
    let n = invariant.num.eval(|v| point.get(v))?;
    let mut acc = LinearForm::new();
    for (c, comp) in field.components() {
        let w = invariant.num.partial(c).eval(|v| point.get(v))? * &d
            - &n * invariant.den.partial(c).eval(|v| point.get(v))?;
        if !w.is_zero() {
            add_scaled(&mut acc, &comp.eval_linear(|v| point.get(v))?, &w);
        }
    }
    acc.retain(|_, v| !v.is_zero());
    Ok(acc)
}
