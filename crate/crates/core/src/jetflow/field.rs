//! Parameterized vector fields, their prolongations, and orbit ranks.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{linalg, Rational};
use crate::error::{Error, Result};

use super::poly::{bump, JetPoly, LinearForm, MultiIndex, Var};
use super::space::{multi_indices, JetPoint, JetSpace};

/// Total derivative `D_i` inside `J^k`, `k = space.order`.
///
/// Parameters are jets of arbitrary functions of the base, so `D_i` shifts
/// their multi-index too. Fails when a fiber coordinate would leave `J^k`.
pub fn total_derivative(expr: &JetPoly, i: usize, space: &JetSpace) -> Result<JetPoly> {
    if i >= space.p {
        return Err(Error::BadPoint(format!(
            "direction {i} with {} base variables",
            space.p
        )));
    }
    expr.derive_with(|v| match v {
        Var::Base(j) => Ok((*j == i).then(JetPoly::one)),
        Var::Fiber { alpha, sigma } => {
            if v.order() + 1 > space.order {
                return Err(Error::OrderExceeded(format!(
                    "D_{i} of an order-{} coordinate in J^{}",
                    v.order(),
                    space.order
                )));
            }
            Ok(Some(JetPoly::var(Var::Fiber {
                alpha: *alpha,
                sigma: bump(sigma, i),
            })))
        }
        Var::Param { func, sigma } => Ok(Some(JetPoly::var(Var::Param {
            func: *func,
            sigma: bump(sigma, i),
        }))),
    })
}

/// Vector field `Σ ξ_i ∂x_i + Σ φ_α ∂u^α` on `J^0`, linear in parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamField {
    pub label: String,
    pub xi: Vec<JetPoly>,
    pub phi: Vec<JetPoly>,
}

impl ParamField {
    pub fn new(label: impl Into<String>, xi: Vec<JetPoly>, phi: Vec<JetPoly>) -> Result<Self> {
        let f = ParamField {
            label: label.into(),
            xi,
            phi,
        };
        let zero_space = JetSpace::new(f.xi.len(), f.phi.len(), 0);
        for c in f.xi.iter().chain(&f.phi) {
            if !c.is_linear_in_params() {
                return Err(Error::Scenario(format!(
                    "{}: not linear in parameters",
                    f.label
                )));
            }
            if c.vars()
                .iter()
                .any(|v| !v.is_param() && !zero_space.contains(v))
            {
                return Err(Error::Scenario(format!(
                    "{}: components may only use base and order-0 fiber coordinates",
                    f.label
                )));
            }
        }
        Ok(f)
    }

    pub fn p(&self) -> usize {
        self.xi.len()
    }

    pub fn q(&self) -> usize {
        self.phi.len()
    }

    /// Highest parameter jet order used by the components.
    pub fn param_order(&self) -> Option<u32> {
        self.xi
            .iter()
            .chain(&self.phi)
            .filter_map(JetPoly::param_order)
            .max()
    }
}

/// Prolongation `X^(k)`: one component per coordinate of `J^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongedField {
    space: JetSpace,
    components: BTreeMap<Var, JetPoly>,
}

impl ProlongedField {
    pub fn space(&self) -> JetSpace {
        self.space
    }

    pub fn component(&self, v: &Var) -> JetPoly {
        self.components.get(v).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> &BTreeMap<Var, JetPoly> {
        &self.components
    }

    pub fn truncate(&self, order: u32) -> ProlongedField {
        let space = self.space.truncate(order.min(self.space.order));
        ProlongedField {
            space,
            components: self
                .components
                .iter()
                .filter(|(v, _)| space.contains(v))
                .map(|(v, c)| (v.clone(), c.clone()))
                .collect(),
        }
    }

    /// Component values at `point`, as linear forms in the parameters, in
    /// coordinate order.
    pub fn evaluate(&self, point: &JetPoint) -> Result<Vec<LinearForm>> {
        if point.space() != self.space {
            return Err(Error::BadPoint(format!(
                "point in J^{} for a field on J^{}",
                point.space().order,
                self.space.order
            )));
        }
        self.space
            .coords()
            .iter()
            .map(|c| self.component(c).eval_linear(|v| point.get(v)))
            .collect()
    }
}

/// Lie prolongation to order `k`:
/// `φ^α_{σ+1_i} = D_i φ^α_σ - Σ_j u^α_{σ+1_j} D_i ξ_j`.
pub fn prolong(field: &ParamField, k: u32) -> Result<ProlongedField> {
    let space = JetSpace::new(field.p(), field.q(), k);
    let mut components = BTreeMap::new();
    for (i, xi) in field.xi.iter().enumerate() {
        components.insert(Var::Base(i), xi.clone());
    }
    for (alpha, phi) in field.phi.iter().enumerate() {
        components.insert(Var::fiber(alpha, &vec![0; field.p()]), phi.clone());
    }
    let dxi: Vec<Vec<JetPoly>> = (0..field.p())
        .map(|i| {
            field
                .xi
                .iter()
                .map(|x| total_derivative(x, i, &space))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for m in 1..=k {
        for alpha in 0..field.q() {
            for sigma in multi_indices(field.p(), m) {
                let i = sigma.iter().position(|&s| s > 0).expect("order >= 1");
                let mut parent: MultiIndex = sigma.clone();
                parent[i] -= 1;
                let prev = &components[&Var::fiber(alpha, &parent)];
                let mut comp = total_derivative(prev, i, &space)?;
                for (j, d) in dxi[i].iter().enumerate() {
                    if !d.is_zero() {
                        let u = JetPoly::var(Var::fiber(alpha, &bump(&parent, j)));
                        comp = &comp - &(&u * d);
                    }
                }
                components.insert(Var::fiber(alpha, &sigma), comp);
            }
        }
    }
    Ok(ProlongedField { space, components })
}

/// Rows of the orbit tangent matrix contributed by one prolonged field:
/// the parameter-free part and one row per parameter jet.
pub fn orbit_rows(
    field: &ProlongedField,
    point: &JetPoint,
) -> Result<BTreeMap<Option<Var>, Vec<Rational>>> {
    let forms = field.evaluate(point)?;
    let mut rows: BTreeMap<Option<Var>, Vec<Rational>> = BTreeMap::new();
    let n = forms.len();
    for (col, form) in forms.into_iter().enumerate() {
        for (key, val) in form {
            rows.entry(key).or_insert_with(|| vec![Rational::zero(); n])[col] = val;
        }
    }
    Ok(rows)
}

/// Default parameter cutoff for order `k`: one above the highest jet of the
/// parameters that order-`k` components can reach.
pub fn default_cutoff(fields: &[ParamField], k: u32) -> u32 {
    k + fields
        .iter()
        .filter_map(ParamField::param_order)
        .max()
        .unwrap_or(0)
        + 1
}

/// Rank of the orbit tangent space at a point, from prolonged fields.
///
/// Only parameter jets of order `<= cutoff` contribute rows; a nonzero row
/// above the cutoff means the cutoff was too small.
pub fn orbit_rank_prolonged(
    fields: &[ProlongedField],
    point: &JetPoint,
    cutoff: u32,
) -> Result<usize> {
    let mut matrix = Vec::new();
    for f in fields {
        for (key, row) in orbit_rows(f, point)? {
            match key {
                Some(v) if v.order() > cutoff => {
                    return Err(Error::CutoffTooSmall(format!(
                        "{v:?} acts on J^{} beyond cutoff {cutoff}",
                        point.space().order
                    )));
                }
                _ => matrix.push(row),
            }
        }
    }
    Ok(linalg::rank(&matrix))
}

/// Rank of `span{X^(k)(point)}` over the generator families.
pub fn orbit_rank(
    fields: &[ParamField],
    point: &JetPoint,
    k: u32,
    cutoff: Option<u32>,
) -> Result<usize> {
    if point.space().order != k {
        return Err(Error::BadPoint(format!(
            "point in J^{} for order {k}",
            point.space().order
        )));
    }
    if let Some(f) = fields.first() {
        if point.space() != JetSpace::new(f.p(), f.q(), k) {
            return Err(Error::BadPoint(
                "point and fields live on different bundles".into(),
            ));
        }
    }
    let cutoff = cutoff.unwrap_or_else(|| default_cutoff(fields, k));
    let prolonged = fields
        .iter()
        .map(|f| prolong(f, k))
        .collect::<Result<Vec<_>>>()?;
    orbit_rank_prolonged(&prolonged, point, cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn u(s: &[u32]) -> JetPoly {
        JetPoly::var(Var::fiber(0, s))
    }

    fn x() -> JetPoly {
        JetPoly::var(Var::Base(0))
    }

    #[test]
    fn shift_and_product_rule() {
        let s = JetSpace::new(2, 1, 3);
        assert_eq!(total_derivative(&u(&[1, 0]), 0, &s).unwrap(), u(&[2, 0]));
        let e = &x() * &u(&[0, 1]);
        assert_eq!(
            total_derivative(&e, 0, &s).unwrap(),
            &u(&[0, 1]) + &(&x() * &u(&[1, 1]))
        );
    }

    #[test]
    fn order_overflow() {
        let s = JetSpace::new(2, 1, 2);
        assert!(matches!(
            total_derivative(&u(&[1, 1]), 1, &s),
            Err(Error::OrderExceeded(_))
        ));
    }

    #[test]
    fn translation_shift() {
        // ξ = 1 prolongs to ∂x; its evolutionary form -Σ u_{σ+1_x} ∂u_σ
        // differs from it by the total derivative ξ D_x
        let f = ParamField::new(
            "dx",
            vec![JetPoly::one(), JetPoly::zero()],
            vec![JetPoly::zero()],
        )
        .unwrap();
        let pr = prolong(&f, 3).unwrap();
        assert_eq!(pr.component(&Var::Base(0)), JetPoly::one());
        for m in 0..=3 {
            for s in multi_indices(2, m) {
                let evolutionary = -u(&bump(&s, 0));
                let total = u(&bump(&s, 0));
                assert_eq!(&pr.component(&Var::fiber(0, &s)), &(&evolutionary + &total));
            }
        }
    }

    #[test]
    fn fiber_translation_is_inert() {
        let f = ParamField::new("du", vec![JetPoly::zero(); 2], vec![JetPoly::one()]).unwrap();
        let pr = prolong(&f, 4).unwrap();
        for m in 1..=4 {
            for s in multi_indices(2, m) {
                assert!(pr.component(&Var::fiber(0, &s)).is_zero());
            }
        }
    }

    #[test]
    fn empty_field_list_has_rank_zero() {
        let s = JetSpace::new(2, 1, 1);
        let pt = JetPoint::new(s, vec![int(1); 5]).unwrap();
        assert_eq!(orbit_rank(&[], &pt, 1, None).unwrap(), 0);
    }

    #[test]
    fn nonlinear_field_rejected() {
        let f = JetPoly::var(Var::param(0, &[0]));
        assert!(ParamField::new("bad", vec![&f * &f], vec![JetPoly::zero()]).is_err());
        assert!(ParamField::new("bad", vec![u(&[1])], vec![JetPoly::zero()]).is_err());
    }
}
