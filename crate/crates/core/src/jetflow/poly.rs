//! Sparse polynomials in jet coordinates and pseudogroup parameters.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Multi-index over the base variables.
pub type MultiIndex = Vec<u32>;

pub fn order_of(sigma: &[u32]) -> u32 {
    sigma.iter().sum()
}

pub(crate) fn bump(sigma: &[u32], i: usize) -> MultiIndex {
    let mut s = sigma.to_vec();
    s[i] += 1;
    s
}

/// A variable of a jet polynomial.
///
/// `Param { func, sigma }` is the derivative `∂^σ f_func` of an arbitrary
/// function in the generator family, taken at the base point. These are
/// independent at a point, so they serve as the parameter basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Base(usize),
    Fiber { alpha: usize, sigma: MultiIndex },
    Param { func: usize, sigma: MultiIndex },
}

impl Var {
    pub fn fiber(alpha: usize, sigma: &[u32]) -> Var {
        Var::Fiber {
            alpha,
            sigma: sigma.to_vec(),
        }
    }

    pub fn param(func: usize, sigma: &[u32]) -> Var {
        Var::Param {
            func,
            sigma: sigma.to_vec(),
        }
    }

    /// Jet order of a fiber or parameter variable; zero for base variables.
    pub fn order(&self) -> u32 {
        match self {
            Var::Base(_) => 0,
            Var::Fiber { sigma, .. } | Var::Param { sigma, .. } => order_of(sigma),
        }
    }

    pub fn is_param(&self) -> bool {
        matches!(self, Var::Param { .. })
    }
}

/// Sorted `(variable, exponent)` list with positive exponents.
pub type Monomial = Vec<(Var, u32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Linear form in parameters: `None` keys the parameter-free part.
pub type LinearForm = BTreeMap<Option<Var>, Rational>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JetPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl JetPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(v: Var) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![(v, 1)], Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        JetPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// All variables that occur.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Highest jet order among fiber variables, if any occur.
    pub fn fiber_order(&self) -> Option<u32> {
        self.vars()
            .iter()
            .filter(|v| matches!(v, Var::Fiber { .. }))
            .map(Var::order)
            .max()
    }

    /// Highest jet order among parameter variables, if any occur.
    pub fn param_order(&self) -> Option<u32> {
        self.vars()
            .iter()
            .filter(|v| v.is_param())
            .map(Var::order)
            .max()
    }

    /// Every monomial carries at most one parameter factor, to the first power.
    pub fn is_linear_in_params(&self) -> bool {
        self.terms.keys().all(|m| {
            let n: u32 = m.iter().filter(|(v, _)| v.is_param()).map(|(_, e)| e).sum();
            n <= 1
        })
    }

    /// Partial derivative in `v`.
    pub fn partial(&self, v: &Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(pos) = m.iter().position(|(w, _)| w == v) {
                let e = m[pos].1;
                let mut nm = m.clone();
                if e == 1 {
                    nm.remove(pos);
                } else {
                    nm[pos].1 -= 1;
                }
                out.add_term(nm, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Derivation sending each variable `v` to `image(v)`, extended by the
    /// Leibniz rule. `image` returning `None` means `v` maps to zero.
    pub fn derive_with<F>(&self, mut image: F) -> Result<Self>
    where
        F: FnMut(&Var) -> Result<Option<JetPoly>>,
    {
        let mut cache: BTreeMap<Var, Option<JetPoly>> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (pos, (v, e)) in m.iter().enumerate() {
                if !cache.contains_key(v) {
                    cache.insert(v.clone(), image(v)?);
                }
                let Some(dv) = &cache[v] else { continue };
                let mut rest = m.clone();
                if *e == 1 {
                    rest.remove(pos);
                } else {
                    rest[pos].1 -= 1;
                }
                let coeff = c * Rational::from_integer((*e).into());
                for (dm, dc) in &dv.terms {
                    out.add_term(mono_mul(&rest, dm), &coeff * dc);
                }
            }
        }
        Ok(out)
    }

    /// Substitutes every non-parameter variable via `value`; the result is a
    /// linear form in the parameters.
    pub fn eval_linear<F>(&self, value: F) -> Result<LinearForm>
    where
        F: Fn(&Var) -> Option<Rational>,
    {
        let mut out = LinearForm::new();
        for (m, c) in &self.terms {
            let mut acc = c.clone();
            let mut key = None;
            for (v, e) in m {
                if v.is_param() {
                    if key.is_some() || *e != 1 {
                        return Err(Error::Scenario("field is not linear in parameters".into()));
                    }
                    key = Some(v.clone());
                } else {
                    let x =
                        value(v).ok_or_else(|| Error::BadPoint(format!("no value for {v:?}")))?;
                    acc *= num_traits::pow(x, *e as usize);
                }
            }
            if !acc.is_zero() {
                let slot = out.entry(key).or_insert_with(Rational::zero);
                *slot += acc;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Full evaluation; parameters are not allowed.
    pub fn eval<F>(&self, value: F) -> Result<Rational>
    where
        F: Fn(&Var) -> Option<Rational>,
    {
        let form = self.eval_linear(value)?;
        if form.keys().any(Option::is_some) {
            return Err(Error::Scenario("expression depends on parameters".into()));
        }
        Ok(form.get(&None).cloned().unwrap_or_else(Rational::zero))
    }
}

impl From<Var> for JetPoly {
    fn from(v: Var) -> Self {
        JetPoly::var(v)
    }
}

impl Add for &JetPoly {
    type Output = JetPoly;
    fn add(self, rhs: &JetPoly) -> JetPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &JetPoly {
    type Output = JetPoly;
    fn sub(self, rhs: &JetPoly) -> JetPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &JetPoly {
    type Output = JetPoly;
    fn mul(self, rhs: &JetPoly) -> JetPoly {
        let mut out = JetPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(mono_mul(a, b), x * y);
            }
        }
        out
    }
}

impl Neg for &JetPoly {
    type Output = JetPoly;
    fn neg(self) -> JetPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for JetPoly {
            type Output = JetPoly;
            fn $m(self, rhs: JetPoly) -> JetPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for JetPoly {
    type Output = JetPoly;
    fn neg(self) -> JetPoly {
        -&self
    }
}
