//! Jet spaces `J^k` of `q` functions of `p` variables and points in them.

use std::collections::BTreeMap;

use crate::algebra::{binomial_i64, Rational};
use crate::error::{Error, Result};

use super::poly::{MultiIndex, Var};

/// Multi-indices of length `p` and order `m`, in descending lexicographic
/// order: `[2,0], [1,1], [0,2]`.
pub fn multi_indices(p: usize, m: u32) -> Vec<MultiIndex> {
    if p == 0 {
        return if m == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=m).rev() {
        for mut rest in multi_indices(p - 1, m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JetSpace {
    pub p: usize,
    pub q: usize,
    pub order: u32,
}

impl JetSpace {
    pub fn new(p: usize, q: usize, order: u32) -> Self {
        JetSpace { p, q, order }
    }

    /// `p + q C(p+k, k)`.
    pub fn dim(&self) -> usize {
        self.p
            + self.q * binomial_i64(self.p as i64 + self.order as i64, self.order as i64) as usize
    }

    /// Coordinates: base first, then each fiber component by order.
    pub fn coords(&self) -> Vec<Var> {
        let mut out: Vec<Var> = (0..self.p).map(Var::Base).collect();
        for alpha in 0..self.q {
            for m in 0..=self.order {
                for sigma in multi_indices(self.p, m) {
                    out.push(Var::Fiber { alpha, sigma });
                }
            }
        }
        out
    }

    /// Fiber coordinates of exact order `m`.
    pub fn fiber_coords_of_order(&self, m: u32) -> Vec<Var> {
        (0..self.q)
            .flat_map(|alpha| {
                multi_indices(self.p, m)
                    .into_iter()
                    .map(move |sigma| Var::Fiber { alpha, sigma })
            })
            .collect()
    }

    pub fn contains(&self, v: &Var) -> bool {
        match v {
            Var::Base(i) => *i < self.p,
            Var::Fiber { alpha, sigma } => {
                *alpha < self.q && sigma.len() == self.p && v.order() <= self.order
            }
            Var::Param { .. } => false,
        }
    }

    pub fn truncate(&self, order: u32) -> JetSpace {
        JetSpace { order, ..*self }
    }
}

/// A rational point of a jet space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetPoint {
    space: JetSpace,
    values: BTreeMap<Var, Rational>,
}

impl JetPoint {
    /// Values listed in [`JetSpace::coords`] order.
    pub fn new(space: JetSpace, values: Vec<Rational>) -> Result<Self> {
        let coords = space.coords();
        if coords.len() != values.len() {
            return Err(Error::BadPoint(format!(
                "{} values for a jet space of dimension {}",
                values.len(),
                coords.len()
            )));
        }
        Ok(JetPoint {
            space,
            values: coords.into_iter().zip(values).collect(),
        })
    }

    pub fn from_map(space: JetSpace, values: BTreeMap<Var, Rational>) -> Result<Self> {
        let coords = space.coords();
        if values.len() != coords.len() || !coords.iter().all(|c| values.contains_key(c)) {
            return Err(Error::BadPoint(
                "point does not match the jet space coordinates".into(),
            ));
        }
        Ok(JetPoint { space, values })
    }

    pub fn space(&self) -> JetSpace {
        self.space
    }

    pub fn get(&self, v: &Var) -> Option<Rational> {
        self.values.get(v).cloned()
    }

    pub fn values(&self) -> &BTreeMap<Var, Rational> {
        &self.values
    }

    /// Projection to a lower order.
    pub fn project(&self, order: u32) -> JetPoint {
        let space = self.space.truncate(order.min(self.space.order));
        JetPoint {
            space,
            values: self
                .values
                .iter()
                .filter(|(v, _)| space.contains(v))
                .map(|(v, x)| (v.clone(), x.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_formula() {
        let s = JetSpace::new(2, 1, 3);
        assert_eq!(s.dim(), 12);
        assert_eq!(s.coords().len(), 12);
        assert_eq!(JetSpace::new(2, 3, 4).dim(), 47);
        assert_eq!(JetSpace::new(0, 3, 0).dim(), 3);
    }

    #[test]
    fn index_order() {
        assert_eq!(
            multi_indices(2, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(multi_indices(3, 1).len(), 3);
    }

    #[test]
    fn point_shape_checked() {
        let s = JetSpace::new(2, 1, 1);
        assert!(matches!(
            JetPoint::new(s, vec![Rational::from_integer(1.into()); 4]),
            Err(Error::BadPoint(_))
        ));
        assert!(JetPoint::new(s, vec![Rational::from_integer(1.into()); 5]).is_ok());
    }
}
