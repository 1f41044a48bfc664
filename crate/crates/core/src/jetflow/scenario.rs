//! Declarative scenario files: bundle shape, generator families, strata and
//! candidate invariants.
//!
//! Jet coordinates are written `u[1,0]` or, for single-digit indices, `u10`.
//! Function jets are written `f[1,0]`; a bare `f` is the function itself.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::algebra::expr::{self, Node};
use crate::algebra::{Rational, RationalFunction};
use crate::error::{Error, Result};

use super::field::ParamField;
use super::poly::{JetPoly, Var};
use super::strata::{Action, JetRational, Sampler, StratumCase};

pub const SCENARIO_VERSION: u32 = 1;

const BUILTIN: [(&str, &str); 3] = [
    (
        "lie-example",
        include_str!("../../data/scenarios/lie-example.json"),
    ),
    (
        "metric2d",
        include_str!("../../data/scenarios/metric2d.json"),
    ),
    (
        "distribution3d",
        include_str!("../../data/scenarios/distribution3d.json"),
    ),
];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    label: String,
    base: Vec<String>,
    fiber: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStratum {
    label: String,
    equalities: Vec<String>,
    inequations: Vec<String>,
    #[serde(default)]
    expected_p: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInvariant {
    label: String,
    stratum: String,
    expr: String,
    #[serde(default)]
    expect: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
enum RawSampler {
    PositiveDefinite([String; 3]),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    version: u32,
    name: String,
    #[serde(default)]
    description: String,
    base: Vec<String>,
    fiber: Vec<String>,
    functions: Vec<String>,
    generators: Vec<RawGenerator>,
    strata: Vec<RawStratum>,
    invariants: Vec<RawInvariant>,
    #[serde(default)]
    sampler: Option<RawSampler>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumSpec {
    pub case: StratumCase,
    pub expected_p: Option<RationalFunction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSpec {
    pub label: String,
    pub stratum: String,
    pub source: String,
    pub expr: JetRational,
    pub expect: Option<bool>,
}

/// Names of base variables, fiber components and generator functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Naming {
    pub base: Vec<String>,
    pub fiber: Vec<String>,
    pub functions: Vec<String>,
}

impl Naming {
    fn check_index(&self, name: &str, idx: &[u32]) -> Result<()> {
        if idx.len() != self.base.len() {
            return Err(Error::Scenario(format!(
                "`{name}` needs {} indices, got {}",
                self.base.len(),
                idx.len()
            )));
        }
        Ok(())
    }

    /// Resolves a name as written in expressions.
    pub fn resolve(&self, name: &str, idx: Option<&[u32]>) -> Result<Var> {
        let p = self.base.len();
        if let Some(i) = self.base.iter().position(|b| b == name) {
            if idx.is_none() {
                return Ok(Var::Base(i));
            }
        }
        if let Some(alpha) = self.fiber.iter().position(|f| f == name) {
            let sigma = idx.map(<[u32]>::to_vec).unwrap_or_else(|| vec![0; p]);
            self.check_index(name, &sigma)?;
            return Ok(Var::Fiber { alpha, sigma });
        }
        if let Some(func) = self.functions.iter().position(|f| f == name) {
            let sigma = idx.map(<[u32]>::to_vec).unwrap_or_else(|| vec![0; p]);
            self.check_index(name, &sigma)?;
            return Ok(Var::Param { func, sigma });
        }
        if idx.is_none() && p > 0 {
            // longest fiber name followed by exactly p digits
            let hit = self
                .fiber
                .iter()
                .enumerate()
                .filter(|(_, f)| name.len() == f.len() + p && name.starts_with(f.as_str()))
                .filter(|(_, f)| name[f.len()..].bytes().all(|b| b.is_ascii_digit()))
                .max_by_key(|(_, f)| f.len());
            if let Some((alpha, f)) = hit {
                let sigma = name[f.len()..]
                    .bytes()
                    .map(|b| u32::from(b - b'0'))
                    .collect();
                return Ok(Var::Fiber { alpha, sigma });
            }
        }
        Err(Error::UnknownSymbol(name.to_string()))
    }

    /// Inverse of [`Naming::resolve`], preferring the compact digit form.
    pub fn name(&self, v: &Var) -> String {
        let bracket = |s: &[u32]| {
            let parts: Vec<String> = s.iter().map(u32::to_string).collect();
            format!("[{}]", parts.join(","))
        };
        match v {
            Var::Base(i) => self.base[*i].clone(),
            Var::Fiber { alpha, sigma } => {
                let f = &self.fiber[*alpha];
                if sigma.iter().all(|&s| s == 0) {
                    f.clone()
                } else if sigma.iter().all(|&s| s < 10)
                    && !f.ends_with(|c: char| c.is_ascii_digit())
                {
                    format!(
                        "{f}{}",
                        sigma.iter().map(u32::to_string).collect::<String>()
                    )
                } else {
                    format!("{f}{}", bracket(sigma))
                }
            }
            Var::Param { func, sigma } => format!("{}{}", self.functions[*func], bracket(sigma)),
        }
    }

    /// Parses an expression into a quotient of jet polynomials.
    pub fn parse_rational(&self, src: &str) -> Result<JetRational> {
        let e = expr::parse(src)?;
        e.fold(&mut |node: Node<JetRational>| {
            Ok(match node {
                Node::Num(n) => {
                    JetRational::from_poly(JetPoly::constant(Rational::from_integer(n.clone())))
                }
                Node::Var(name, idx) => {
                    JetRational::from_poly(JetPoly::var(self.resolve(name, idx)?))
                }
                Node::Add(a, b) => JetRational {
                    num: &(&a.num * &b.den) + &(&b.num * &a.den),
                    den: &a.den * &b.den,
                },
                Node::Sub(a, b) => JetRational {
                    num: &(&a.num * &b.den) - &(&b.num * &a.den),
                    den: &a.den * &b.den,
                },
                Node::Mul(a, b) => JetRational {
                    num: &a.num * &b.num,
                    den: &a.den * &b.den,
                },
                Node::Div(a, b) => JetRational::new(&a.num * &b.den, &a.den * &b.num)?,
                Node::Neg(a) => JetRational {
                    num: -&a.num,
                    den: a.den,
                },
                Node::Pow(a, e) if e >= 0 => JetRational {
                    num: a.num.pow(e as u32),
                    den: a.den.pow(e as u32),
                },
                Node::Pow(a, e) => {
                    JetRational::new(a.den.pow(e.unsigned_abs()), a.num.pow(e.unsigned_abs()))?
                }
            })
        })
    }

    /// Parses a polynomial expression; division only by constants.
    pub fn parse_poly(&self, src: &str) -> Result<JetPoly> {
        let r = self.parse_rational(src)?;
        let d = r
            .den
            .as_constant()
            .ok_or_else(|| Error::Scenario(format!("`{src}` is not polynomial")))?;
        Ok(r.num.scale(&(Rational::from_integer(1.into()) / d)))
    }
}

/// A loaded scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub naming: Naming,
    pub action: Action,
    pub strata: Vec<StratumSpec>,
    pub invariants: Vec<InvariantSpec>,
}

impl Scenario {
    pub fn from_json(src: &str) -> Result<Self> {
        let raw: RawScenario =
            serde_json::from_str(src).map_err(|e| Error::Scenario(e.to_string()))?;
        if raw.version != SCENARIO_VERSION {
            return Err(Error::Scenario(format!(
                "unsupported scenario version {}",
                raw.version
            )));
        }
        let naming = Naming {
            base: raw.base,
            fiber: raw.fiber,
            functions: raw.functions,
        };
        let (p, q) = (naming.base.len(), naming.fiber.len());
        let fields = raw
            .generators
            .iter()
            .map(|g| {
                if g.base.len() != p || g.fiber.len() != q {
                    return Err(Error::Scenario(format!(
                        "{}: wrong number of components",
                        g.label
                    )));
                }
                let xi = g
                    .base
                    .iter()
                    .map(|s| naming.parse_poly(s))
                    .collect::<Result<_>>()?;
                let phi = g
                    .fiber
                    .iter()
                    .map(|s| naming.parse_poly(s))
                    .collect::<Result<_>>()?;
                ParamField::new(g.label.clone(), xi, phi)
            })
            .collect::<Result<Vec<_>>>()?;
        let coord = |s: &String| -> Result<Var> {
            match naming.resolve(s, None)? {
                v @ Var::Fiber { .. } => Ok(v),
                _ => Err(Error::Scenario(format!(
                    "`{s}` is not a fiber jet coordinate"
                ))),
            }
        };
        let strata = raw
            .strata
            .iter()
            .map(|s| {
                let eq = s.equalities.iter().map(coord).collect::<Result<_>>()?;
                let ne = s.inequations.iter().map(coord).collect::<Result<_>>()?;
                Ok(StratumSpec {
                    case: StratumCase::new(s.label.clone(), eq, ne)?,
                    expected_p: s
                        .expected_p
                        .as_deref()
                        .map(expr::parse_rational_function)
                        .transpose()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let invariants = raw
            .invariants
            .iter()
            .map(|i| {
                if !strata.iter().any(|s| s.case.label == i.stratum) {
                    return Err(Error::Scenario(format!(
                        "{}: unknown stratum {}",
                        i.label, i.stratum
                    )));
                }
                Ok(InvariantSpec {
                    label: i.label.clone(),
                    stratum: i.stratum.clone(),
                    source: i.expr.clone(),
                    expr: naming.parse_rational(&i.expr)?,
                    expect: i.expect,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let sampler = match raw.sampler {
            None => Sampler::Uniform,
            Some(RawSampler::PositiveDefinite(names)) => {
                let [a, b, c] = names.each_ref().map(coord);
                Sampler::PositiveDefinite([a?, b?, c?])
            }
        };
        Ok(Scenario {
            name: raw.name,
            description: raw.description,
            action: Action::new(p, q, fields, sampler)?,
            naming,
            strata,
            invariants,
        })
    }

    /// A shipped scenario by name.
    pub fn builtin(name: &str) -> Result<Self> {
        let (_, src) = BUILTIN
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
        Scenario::from_json(src)
    }

    pub fn builtin_names() -> Vec<&'static str> {
        BUILTIN.iter().map(|(n, _)| *n).collect()
    }

    pub fn stratum(&self, label: &str) -> Result<&StratumSpec> {
        self.strata
            .iter()
            .find(|s| s.case.label == label)
            .ok_or_else(|| Error::Scenario(format!("unknown stratum {label}")))
    }

    pub fn var(&self, name: &str) -> Result<Var> {
        self.naming.resolve(name, None)
    }

    /// Map from stratum label to its index, in file order.
    pub fn stratum_index(&self) -> BTreeMap<&str, usize> {
        self.strata
            .iter()
            .enumerate()
            .map(|(i, s)| (s.case.label.as_str(), i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naming() -> Naming {
        Naming {
            base: vec!["x".into(), "y".into()],
            fiber: vec!["u".into()],
            functions: vec!["f".into()],
        }
    }

    #[test]
    fn name_resolution() {
        let n = naming();
        assert_eq!(n.resolve("u10", None).unwrap(), Var::fiber(0, &[1, 0]));
        assert_eq!(
            n.resolve("u", Some(&[0, 3])).unwrap(),
            Var::fiber(0, &[0, 3])
        );
        assert_eq!(n.resolve("u", None).unwrap(), Var::fiber(0, &[0, 0]));
        assert_eq!(
            n.resolve("f", Some(&[2, 1])).unwrap(),
            Var::param(0, &[2, 1])
        );
        assert_eq!(n.resolve("x", None).unwrap(), Var::Base(0));
        assert!(n.resolve("u1", None).is_err());
        assert!(n.resolve("v10", None).is_err());
        assert_eq!(n.name(&Var::fiber(0, &[1, 2])), "u12");
        assert_eq!(n.name(&Var::param(0, &[1, 0])), "f[1,0]");
    }

    #[test]
    fn rational_parse() {
        let n = naming();
        let r = n.parse_rational("u02 - u11^2/u20").unwrap();
        assert_eq!(r.order(), 2);
        assert_eq!(r.den, JetPoly::var(Var::fiber(0, &[2, 0])));
        assert!(n.parse_poly("1/u10").is_err());
        assert_eq!(
            n.parse_poly("x/2").unwrap(),
            JetPoly::var(Var::Base(0)).scale(&crate::algebra::rat(1, 2))
        );
    }

    #[test]
    fn builtins_load() {
        for name in Scenario::builtin_names() {
            Scenario::builtin(name).unwrap();
        }
        let lie = Scenario::builtin("lie-example").unwrap();
        assert_eq!(lie.strata.len(), 7);
        assert_eq!(lie.action.fields.len(), 3);
        assert!(matches!(
            Scenario::builtin("nope"),
            Err(Error::UnknownEntry(_))
        ));
    }

    #[test]
    fn malformed_rejected() {
        let bad = r#"{"version": 1, "name": "x", "base": ["x"], "fiber": ["u"], "functions": [],
            "generators": [{"label": "g", "base": ["u1"], "fiber": ["0"]}], "strata": [], "invariants": []}"#;
        assert!(Scenario::from_json(bad).is_err());
        let wrong_version = bad.replace("\"version\": 1", "\"version\": 9");
        assert!(matches!(
            Scenario::from_json(&wrong_version),
            Err(Error::Scenario(_))
        ));
    }
}
