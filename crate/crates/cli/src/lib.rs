//! Command-line front end for `poincare-core`.
//!
//! [`run`] parses an argument vector and returns the exit code together with
//! the text for stdout and stderr, so the binary and the tests share one path.
//! Exit codes: 0 success, 1 mismatch findings present, 2 usage or validity
//! error.

pub mod output;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Zero;
use poincare_core::algebra::expr::parse_rational_function;
use poincare_core::analysis::{analyze, asymptotic_check, s_sequence};
use poincare_core::catalog::{
    claimed_poincare, hilbert_spec, list_entries, BaseDim, Catalog, EntryClass, ParamRanges, Params,
};
use poincare_core::counting::{assemble_hilbert, shipped_plan};
use poincare_core::jetflow::{
    distribution_example, invariant_checks, lie_example_table_with, metric2d_case, Scenario,
    DEFAULT_SEED, LIE_TABLE_KMAX, METRIC2D_KMAX,
};
use poincare_core::{PoleReport, RationalFunction, VerificationStatus};

pub use output::{Document, Format, Table, Value, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const EXPR_HELP: &str = "\
Rational function literal in z, e.g. \"1/(1-z^2)^3\" or \"z^2(1+z)/(1-z)^4\".

Grammar:
  expr  = term { (\"+\" | \"-\") term }
  term  = unary { (\"*\" | \"/\" | juxtaposition) unary }
  unary = (\"-\" | \"+\") unary | power
  power = atom [ \"^\" [\"-\"] integer ]
  atom  = integer | \"z\" | \"(\" expr \")\"";

#[derive(Parser, Debug)]
#[command(
    name = "poincare",
    version,
    about = "Exact Poincare functions of differential invariant counts"
)]
struct Cli {
    /// Output format: markdown, csv or json.
    #[arg(
        long,
        global = true,
        env = "POINCARE_FORMAT",
        default_value = "markdown"
    )]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog entries.
    List,
    /// Hilbert function, partial sums and pole data of one entry.
    Show {
        id: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
    },
    /// Check claimed Poincare functions against the Hilbert functions.
    Verify {
        #[arg(long)]
        id: Option<String>,
        #[arg(long, default_value_t = 8)]
        nmax: i64,
        /// Bound for the parameters other than n.
        #[arg(long, default_value_t = 4)]
        auxmax: i64,
        #[arg(long, default_value_t = 50)]
        kmax: usize,
    },
    /// Pole analysis of a rational function.
    Analyze {
        #[arg(long, long_help = EXPR_HELP)]
        expr: String,
        /// Also print the first coefficients.
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Stratification of the scalar example and its invariants.
    StrataDemo {
        #[arg(long, default_value_t = LIE_TABLE_KMAX)]
        kmax: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Invariant counts of planar metrics from the jet engine.
    Metric2d {
        #[arg(long, default_value_t = METRIC2D_KMAX)]
        kmax: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Recompute an entry from its dimension-count plan.
    Rederive {
        #[arg(long)]
        id: String,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 40)]
        kmax: usize,
    },
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long)]
    n: Option<i64>,
    /// Other parameters as `name=value` pairs, comma separated.
    #[arg(long, value_parser = parse_params)]
    params: Option<Params>,
}

impl ParamArgs {
    fn resolve(&self) -> Params {
        let mut p = self.params.clone().unwrap_or_default();
        if let Some(n) = self.n {
            p = p.with("n", n);
        }
        p
    }
}

fn parse_params(s: &str) -> Result<Params, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .try_fold(Params::new(), |acc, t| {
            let (k, v) = t
                .split_once('=')
                .ok_or(format!("expected name=value, got `{t}`"))?;
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| format!("`{v}` is not an integer"))?;
            Ok(acc.with(k.trim(), v))
        })
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(cli.command) {
        Ok((doc, mismatch)) => Outcome {
            code: if mismatch { EXIT_MISMATCH } else { EXIT_OK },
            stdout: doc.render(cli.format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

type Report = poincare_core::Result<(Document, bool)>;

fn execute(cmd: Command) -> Report {
    match cmd {
        Command::List => Ok((list(), false)),
        Command::Show { id, params, kmax } => {
            show(&id, &params.resolve(), kmax).map(|d| (d, false))
        }
        Command::Verify {
            id,
            nmax,
            auxmax,
            kmax,
        } => verify(
            id.as_deref(),
            ParamRanges {
                n_max: nmax,
                aux_max: auxmax,
            },
            kmax,
        ),
        Command::Analyze { expr, kmax } => analyze_cmd(&expr, kmax).map(|d| (d, false)),
        Command::StrataDemo { kmax, seed } => strata_demo(kmax, seed),
        Command::Metric2d { kmax, seed } => metric2d(kmax, seed),
        Command::Rederive { id, n, kmax } => rederive(&id, n, kmax),
    }
}

fn list() -> Document {
    let mut doc = Document::new("list");
    let mut t = Table::new(
        "entries",
        &[
            "id", "title", "class", "params", "base_dim", "hilbert", "formula",
        ],
    );
    for e in list_entries() {
        let params: Vec<String> = e
            .params
            .iter()
            .map(|p| match p.max {
                Some(m) if m == p.min => format!("{}={m}", p.name),
                Some(m) => format!("{}<={}<={m}", p.min, p.name),
                None => format!("{}>={}", p.name, p.min),
            })
            .collect();
        let base = match e.base_dim {
            BaseDim::Const(c) => c.to_string(),
            BaseDim::NFactor(1) => "n".into(),
            BaseDim::NFactor(f) => format!("{f}n"),
        };
        let class = match e.class {
            EntryClass::Transitive => "transitive",
            EntryClass::NormalForm => "normal-form",
        };
        t.push(vec![
            e.id.as_str().into(),
            e.title.as_str().into(),
            class.into(),
            params.join(",").into(),
            base.into(),
            e.hilbert.into(),
            e.formula.as_str().into(),
        ]);
    }
    doc.tables.push(t);
    doc.field("catalog_entries", list_entries().len() as i64);
    doc
}

fn pole_fields(doc: &mut Document, f: &RationalFunction, rep: &PoleReport) {
    doc.field("P", f.clone());
    doc.field("d", rep.d);
    doc.field("sigma", rep.sigma.clone());
    doc.field("pr_form", rep.conforms_to_pr);
    let others: Vec<Value> = rep
        .other_unit_poles
        .iter()
        .map(|(phi, m)| format!("({})^{m}", phi.to_text("z")).into())
        .collect();
    doc.field("other_unit_poles", Value::List(others));
}

fn show(id: &str, params: &Params, kmax: usize) -> poincare_core::Result<Document> {
    let entry = Catalog::builtin().entry(id)?;
    entry.validate(params)?;
    let p = claimed_poincare(id, params)?;
    let rep = analyze(&p);
    let mut doc = Document::new("show");
    doc.field("id", id);
    doc.field("params", params.to_string());
    pole_fields(&mut doc, &p, &rep);
    let (h, source): (Vec<Value>, &str) = if entry.hilbert {
        let spec = hilbert_spec(id, params)?;
        (
            spec.values(kmax).into_iter().map(Value::from).collect(),
            "hilbert function",
        )
    } else {
        let s = p.series_expand(kmax)?;
        (
            s.into_coeffs().into_iter().map(Value::from).collect(),
            "series of P",
        )
    };
    doc.field("h_source", source);
    let s = s_sequence(&p, kmax)?;
    let mut t = Table::new("counts", &["k", "h_k", "s_k"]);
    for (k, (hk, sk)) in h.into_iter().zip(s).enumerate() {
        t.push(vec![(k as i64).into(), hk, sk.into()]);
    }
    doc.tables.push(t);
    Ok(doc)
}

fn verify(id: Option<&str>, ranges: ParamRanges, kmax: usize) -> Report {
    let catalog = Catalog::builtin();
    let reports = match id {
        Some(id) => {
            catalog.entry(id)?;
            catalog.verify_selected(std::iter::once(id), kmax, &ranges)
        }
        None => catalog.verify_all(kmax, &ranges),
    };
    let mut doc = Document::new("verify");
    let mut t = Table::new(
        "reports",
        &["id", "params", "status", "d", "sigma", "findings"],
    );
    let mut mismatches = 0i64;
    for r in &reports {
        if r.status == VerificationStatus::Mismatch {
            mismatches += 1;
        }
        let findings: Vec<Value> = r.findings.iter().map(|f| f.to_string().into()).collect();
        t.push(vec![
            r.id.as_str().into(),
            r.params.to_string().into(),
            r.status.to_string().into(),
            r.poles.d.into(),
            r.poles.sigma.clone().into(),
            Value::List(findings),
        ]);
    }
    doc.field("kmax", kmax as i64);
    doc.field("checked", reports.len() as i64);
    doc.field("mismatches", mismatches);
    doc.tables.push(t);
    Ok((doc, mismatches > 0))
}

fn analyze_cmd(expr: &str, kmax: Option<usize>) -> poincare_core::Result<Document> {
    let f = parse_rational_function(expr)?;
    let rep = analyze(&f);
    let mut doc = Document::new("analyze");
    doc.field("expr", expr);
    pole_fields(&mut doc, &f, &rep);
    let regular_at_zero = !f.den().coeff(0).is_zero();
    if rep.conforms_to_pr && rep.d > 0 && regular_at_zero {
        doc.field("asymptotic_check", asymptotic_check(&f)?);
    }
    if let Some(k) = kmax {
        let s = f.series_expand(k)?;
        let mut t = Table::new("series", &["k", "coefficient"]);
        for (i, c) in s.into_coeffs().into_iter().enumerate() {
            t.push(vec![(i as i64).into(), c.into()]);
        }
        doc.tables.push(t);
    }
    Ok(doc)
}

fn strata_demo(kmax: u32, seed: u64) -> Report {
    let rows = lie_example_table_with(kmax, seed)?;
    let mut doc = Document::new("strata-demo");
    doc.field("kmax", i64::from(kmax));
    doc.field("seed", seed.to_string());
    let mut cols: Vec<String> = vec!["stratum".into()];
    cols.extend((0..=kmax).map(|k| format!("h_{k}")));
    cols.extend(["P", "expected P", "agrees"].map(String::from));
    let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut t = Table::new("strata", &col_refs);
    let mut mismatch = false;
    for r in rows {
        let agrees = r.expected_p.as_ref().map(|e| series_agrees(e, &r.h));
        mismatch |= agrees == Some(false);
        let mut row: Vec<Value> = vec![r.label.into()];
        row.extend(r.h.iter().map(|&h| Value::from(h)));
        row.push(r.p.into());
        row.push(r.expected_p.into());
        row.push(agrees.into());
        t.push(row);
    }
    doc.tables.push(t);

    let scn = Scenario::builtin("lie-example")?;
    let mut inv = Table::new(
        "invariants",
        &["stratum", "label", "expression", "annihilated", "expected"],
    );
    for o in invariant_checks(&scn, seed)? {
        mismatch |= !o.as_expected();
        inv.push(vec![
            o.stratum.into(),
            o.label.into(),
            o.expr.into(),
            o.annihilated.into(),
            o.expect.into(),
        ]);
    }
    doc.tables.push(inv);

    let dist = distribution_example()?;
    let mut orb = Table::new(
        "orbits in three dimensions",
        &["stratum", "dim", "orbit rank", "invariants"],
    );
    for s in dist.strata {
        orb.push(vec![
            s.label.into(),
            (s.dim as i64).into(),
            (s.rank as i64).into(),
            (s.invariants as i64).into(),
        ]);
    }
    doc.tables.push(orb);
    let mut dchk = Table::new(
        "three-dimensional invariants",
        &["stratum", "expression", "annihilated", "expected"],
    );
    for o in dist.checks {
        mismatch |= !o.as_expected();
        dchk.push(vec![
            o.stratum.into(),
            o.expr.into(),
            o.annihilated.into(),
            o.expect.into(),
        ]);
    }
    doc.tables.push(dchk);
    Ok((doc, mismatch))
}

/// Whether the computed counts agree with the series of a reference function.
fn series_agrees(reference: &RationalFunction, h: &[i64]) -> bool {
    match reference.series_expand(h.len().saturating_sub(1)) {
        Ok(s) => s
            .coeffs()
            .iter()
            .zip(h)
            .all(|(c, &v)| *c == poincare_core::Rational::from_integer(v.into())),
        Err(_) => false,
    }
}

fn metric2d(kmax: u32, seed: u64) -> Report {
    let h = metric2d_case(kmax, seed)?;
    let riem = hilbert_spec("riemannian", &Params::n(2))?;
    let mut doc = Document::new("metric2d");
    doc.field("kmax", i64::from(kmax));
    doc.field("seed", seed.to_string());
    let mut t = Table::new(
        "counts",
        &["k", "jet engine", "catalog riemannian n=2", "agrees"],
    );
    let mut mismatch = false;
    for (k, &v) in h.iter().enumerate() {
        let c = riem.h_value(k);
        let ok = c == BigInt::from(v);
        mismatch |= !ok;
        t.push(vec![(k as i64).into(), v.into(), c.into(), ok.into()]);
    }
    doc.tables.push(t);
    Ok((doc, mismatch))
}

fn rederive(id: &str, n: i64, kmax: usize) -> Report {
    let params = Params::n(n);
    let entry = Catalog::builtin().entry(id)?;
    entry.validate(&params)?;
    let plan = shipped_plan(id, n)?;
    let got = assemble_hilbert(&plan)?;
    let want = hilbert_spec(id, &params)?;
    let mut doc = Document::new("rederive");
    doc.field("id", id);
    doc.field("params", params.to_string());
    doc.field("plan_P", got.generating_function());
    doc.field("catalog_P", want.generating_function());
    let mut t = Table::new("counts", &["k", "plan", "catalog", "agrees"]);
    let mut mismatch = got != want;
    for (k, (a, b)) in got
        .values(kmax)
        .into_iter()
        .zip(want.values(kmax))
        .enumerate()
    {
        let ok = a == b;
        mismatch |= !ok;
        t.push(vec![(k as i64).into(), a.into(), b.into(), ok.into()]);
    }
    doc.field("agrees", !mismatch);
    doc.tables.push(t);
    Ok((doc, mismatch))
}
