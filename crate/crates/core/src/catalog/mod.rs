//! Roster of geometric structures with their invariant counts.
//!
//! Entry metadata (ids, titles, parameter ranges, base dimensions, the count
//! in plain notation) lives in the embedded `data/catalog.json`; the Hilbert
//! functions and closed-form Poincare functions are Rust constructors keyed
//! by id in [`formulas`].

mod formulas;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Deserialize;

use crate::algebra::{Polynomial, Rational, RationalFunction};
use crate::analysis::{analyze, PoleReport};
use crate::error::{Error, Result};
use crate::hilbert::{equal_series, HilbertSpec};

const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

/// Supported data file version.
pub const CATALOG_VERSION: u32 = 1;

/// Whether the structure group acts transitively on the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryClass {
    /// Single pole at `z = 1` expected.
    Transitive,
    /// Singular-point normal forms; other unit-circle poles allowed.
    NormalForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct ParamSpec {
    pub name: String,
    pub min: i64,
    #[serde(default)]
    pub max: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseDim {
    /// `factor * n`
    NFactor(i64),
    Const(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub id: String,
    pub title: String,
    pub class: EntryClass,
    pub params: Vec<ParamSpec>,
    pub base_dim: BaseDim,
    /// Whether an independent Hilbert function is shipped.
    pub hilbert: bool,
    /// The count in plain notation.
    pub formula: String,
    #[serde(default)]
    pub notes: Option<String>,
    #[serde(default)]
    pub flags: Vec<String>,
}

/// Named integer parameters, e.g. `n=3` or `p=1,q=2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params(BTreeMap<String, i64>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn n(n: i64) -> Self {
        Self::new().with("n", n)
    }

    pub fn with(mut self, name: &str, v: i64) -> Self {
        self.0.insert(name.to_string(), v);
        self
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl CatalogEntry {
    /// Checks that exactly the declared parameters are present and in range.
    pub fn validate(&self, params: &Params) -> Result<()> {
        let invalid = |reason: String| Error::OutOfValidity {
            id: self.id.clone(),
            reason,
        };
        for (name, _) in params.iter() {
            if !self.params.iter().any(|p| p.name == name) {
                return Err(invalid(format!("unexpected parameter `{name}`")));
            }
        }
        for spec in &self.params {
            let v = params
                .get(&spec.name)
                .ok_or_else(|| invalid(format!("missing parameter `{}`", spec.name)))?;
            if v < spec.min || spec.max.is_some_and(|m| v > m) {
                let range = match spec.max {
                    Some(m) if m == spec.min => format!("= {m}"),
                    Some(m) => format!("in {}..={m}", spec.min),
                    None => format!(">= {}", spec.min),
                };
                return Err(invalid(format!(
                    "{} = {v}, need {} {range}",
                    spec.name, spec.name
                )));
            }
        }
        Ok(())
    }

    pub fn base_dim(&self, params: &Params) -> i64 {
        match self.base_dim {
            BaseDim::Const(c) => c,
            BaseDim::NFactor(f) => f * params.get("n").unwrap_or(0),
        }
    }

    /// Parameter samples within `ranges`, in lexicographic order.
    pub fn samples(&self, ranges: &ParamRanges) -> Vec<Params> {
        let mut out = vec![Params::new()];
        for spec in &self.params {
            let cap = if spec.name == "n" {
                ranges.n_max
            } else {
                ranges.aux_max
            };
            let hi = spec.max.map_or(cap, |m| m.min(cap));
            out = out
                .into_iter()
                .flat_map(|p| (spec.min..=hi).map(move |v| p.clone().with(&spec.name, v)))
                .collect();
        }
        out
    }
}

/// Upper bounds for the parameter sweep of [`Catalog::verify_all`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamRanges {
    pub n_max: i64,
    /// Bound for the other integer parameters (`m`, `p`, `q`).
    pub aux_max: i64,
}

impl Default for ParamRanges {
    fn default() -> Self {
        ParamRanges {
            n_max: 8,
            aux_max: 4,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    version: u32,
    entries: Vec<CatalogEntry>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// The embedded catalog.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::from_json(CATALOG_JSON).expect("embedded catalog is valid"))
    }

    /// Parses a catalog file; every id must have constructors and vice versa.
    pub fn from_json(src: &str) -> Result<Catalog> {
        let file: CatalogFile =
            serde_json::from_str(src).map_err(|e| Error::CatalogData(e.to_string()))?;
        if file.version != CATALOG_VERSION {
            return Err(Error::CatalogData(format!(
                "unsupported catalog version {} (expected {CATALOG_VERSION})",
                file.version
            )));
        }
        let ids: Vec<&str> = file.entries.iter().map(|e| e.id.as_str()).collect();
        if ids != formulas::KNOWN_IDS {
            return Err(Error::CatalogData(
                "entry ids do not match the shipped constructors".into(),
            ));
        }
        Ok(Catalog {
            entries: file.entries,
        })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, id: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEntry(id.to_string()))
    }

    pub fn hilbert_spec(&self, id: &str, params: &Params) -> Result<HilbertSpec> {
        let entry = self.entry(id)?;
        entry.validate(params)?;
        formulas::hilbert(id, params).unwrap_or_else(|| Err(Error::NoHilbertData(id.to_string())))
    }

    pub fn claimed_poincare(&self, id: &str, params: &Params) -> Result<RationalFunction> {
        self.entry(id)?.validate(params)?;
        formulas::claimed(id, params)
    }

    /// Source text of the claimed Poincare function, before normalization.
    pub fn claimed_source(&self, id: &str, params: &Params) -> Result<String> {
        self.entry(id)?.validate(params)?;
        Ok(formulas::claimed_source(id, params))
    }

    /// Checks an entry: pole structure of the claimed `P`, and, when a
    /// Hilbert function is shipped, exact equality of its generating
    /// function with `P` plus a series comparison to `k_max`.
    pub fn verify_entry(
        &self,
        id: &str,
        params: &Params,
        k_max: usize,
    ) -> Result<VerificationReport> {
        let entry = self.entry(id)?;
        entry.validate(params)?;
        let p = formulas::claimed(id, params)?;
        let mut findings = Vec::new();
        let poles = analyze(&p);
        if p.den().coeff(0).is_zero() {
            findings.push(Finding::PoleAtOrigin);
        }
        let base = entry.base_dim(params);
        if poles.d > base {
            findings.push(Finding::PoleOrderExceedsBase { d: poles.d, base });
        }
        if entry.class == EntryClass::Transitive && !poles.conforms_to_pr {
            findings.push(Finding::ExtraPoles {
                denominator: p.den().clone(),
            });
        }
        let has_spec = match formulas::hilbert(id, params) {
            None => false,
            Some(spec) => {
                let spec = spec?;
                let gf = spec.generating_function();
                if gf != p {
                    findings.push(Finding::GfMismatch {
                        from_hilbert: gf,
                        claimed: p.clone(),
                    });
                }
                if !findings.iter().any(|f| matches!(f, Finding::PoleAtOrigin)) {
                    let m = equal_series(&p, &spec, k_max)?;
                    if let Some(mm) = m.first_mismatch {
                        findings.push(Finding::SeriesMismatch {
                            k: mm.k,
                            expected: mm.expected,
                            got: mm.got,
                        });
                    }
                }
                true
            }
        };
        let status = if !findings.is_empty() {
            VerificationStatus::Mismatch
        } else if has_spec {
            VerificationStatus::Match
        } else {
            VerificationStatus::Skipped
        };
        Ok(VerificationReport {
            id: id.to_string(),
            params: params.clone(),
            status,
            findings,
            poles,
        })
    }

    /// Verifies every entry over its parameter samples. Work is spread over
    /// the rayon pool; the output order is the catalog order, then the
    /// parameter order, independent of scheduling.
    pub fn verify_all(&self, k_max: usize, ranges: &ParamRanges) -> Vec<VerificationReport> {
        self.verify_selected(self.entries.iter().map(|e| e.id.as_str()), k_max, ranges)
    }

    pub fn verify_selected<'a>(
        &self,
        ids: impl Iterator<Item = &'a str>,
        k_max: usize,
        ranges: &ParamRanges,
    ) -> Vec<VerificationReport> {
        let jobs: Vec<(String, Params)> = ids
            .filter_map(|id| self.entry(id).ok())
            .flat_map(|e| {
                e.samples(ranges)
                    .into_iter()
                    .map(move |p| (e.id.clone(), p))
            })
            .collect();
        jobs.par_iter()
            .map(|(id, p)| {
                self.verify_entry(id, p, k_max)
                    .unwrap_or_else(|e| VerificationReport {
                        id: id.clone(),
                        params: p.clone(),
                        status: VerificationStatus::Mismatch,
                        findings: vec![Finding::Error(e.to_string())],
                        poles: PoleReport::default(),
                    })
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerificationStatus {
    Match,
    Mismatch,
    /// Pole checks passed but there is no independent Hilbert function.
    Skipped,
}

impl fmt::Display for VerificationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Match => "match",
            Self::Mismatch => "mismatch",
            Self::Skipped => "skipped",
        })
    }
}

/// One discrepancy found by [`Catalog::verify_entry`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    GfMismatch {
        from_hilbert: RationalFunction,
        claimed: RationalFunction,
    },
    SeriesMismatch {
        k: usize,
        expected: BigInt,
        got: Rational,
    },
    PoleAtOrigin,
    PoleOrderExceedsBase {
        d: i64,
        base: i64,
    },
    /// Denominator is not a power of `1 - z`.
    ExtraPoles {
        denominator: Polynomial,
    },
    /// The entry could not be evaluated at all.
    Error(String),
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GfMismatch {
                from_hilbert,
                claimed,
            } => write!(
                f,
                "generating function {from_hilbert} differs from claimed {claimed}"
            ),
            Self::SeriesMismatch { k, expected, got } => {
                write!(
                    f,
                    "series differs at k={k}: h_k = {expected}, [z^k]P = {got}"
                )
            }
            Self::PoleAtOrigin => f.write_str("claimed P has a pole at z = 0"),
            Self::PoleOrderExceedsBase { d, base } => {
                write!(f, "pole order {d} at z = 1 exceeds base dimension {base}")
            }
            Self::ExtraPoles { denominator } => {
                write!(f, "denominator {denominator} is not a power of 1 - z")
            }
            Self::Error(e) => write!(f, "error: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: String,
    pub params: Params,
    pub status: VerificationStatus,
    /// Empty iff `status` is not `Mismatch`.
    pub findings: Vec<Finding>,
    pub poles: PoleReport,
}

/// Entry ids in catalog order.
pub fn list_entries() -> &'static [CatalogEntry] {
    Catalog::builtin().entries()
}

pub fn hilbert_spec(id: &str, params: &Params) -> Result<HilbertSpec> {
    Catalog::builtin().hilbert_spec(id, params)
}

pub fn claimed_poincare(id: &str, params: &Params) -> Result<RationalFunction> {
    Catalog::builtin().claimed_poincare(id, params)
}

pub fn verify_entry(id: &str, params: &Params, k_max: usize) -> Result<VerificationReport> {
    Catalog::builtin().verify_entry(id, params, k_max)
}

pub fn verify_all(k_max: usize, ranges: &ParamRanges) -> Vec<VerificationReport> {
    Catalog::builtin().verify_all(k_max, ranges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads() {
        let c = Catalog::builtin();
        assert_eq!(c.entries().len(), 26);
        assert_eq!(c.entries()[0].id, "ode-general");
    }

    #[test]
    fn bad_files_rejected() {
        assert!(matches!(
            Catalog::from_json("{}"),
            Err(Error::CatalogData(_))
        ));
        let wrong_version = CATALOG_JSON.replacen("\"version\": 1", "\"version\": 9", 1);
        assert!(matches!(
            Catalog::from_json(&wrong_version),
            Err(Error::CatalogData(_))
        ));
    }

    #[test]
    fn params_validated() {
        let c = Catalog::builtin();
        assert!(matches!(
            c.hilbert_spec("einstein-weyl", &Params::n(2)),
            Err(Error::OutOfValidity { .. })
        ));
        assert!(matches!(
            c.hilbert_spec("riemannian", &Params::new()),
            Err(Error::OutOfValidity { .. })
        ));
        assert!(matches!(
            c.hilbert_spec("ode-cubic", &Params::n(2)),
            Err(Error::OutOfValidity { .. })
        ));
        assert!(matches!(
            c.hilbert_spec("nope", &Params::new()),
            Err(Error::UnknownEntry(_))
        ));
        assert!(matches!(
            c.hilbert_spec("takens-bogdanov", &Params::new()),
            Err(Error::NoHilbertData(_))
        ));
    }

    #[test]
    fn samples_respect_ranges() {
        let c = Catalog::builtin();
        let r = ParamRanges {
            n_max: 6,
            aux_max: 3,
        };
        assert_eq!(
            c.entry("self-dual-metrics").unwrap().samples(&r),
            vec![Params::n(4)]
        );
        assert_eq!(
            c.entry("ode-general").unwrap().samples(&r),
            vec![Params::new()]
        );
        assert_eq!(
            c.entry("poincare-dulac-saddle").unwrap().samples(&r).len(),
            9
        );
        assert_eq!(c.entry("conformal").unwrap().samples(&r).len(), 4);
    }
}
