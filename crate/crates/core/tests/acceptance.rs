//! Acceptance gate: one PASS/FAIL line per criterion, exact comparisons only.
//!
//! A criterion that fails for a documented reason is listed in
//! `KNOWN_FAILURES`; the target exits nonzero only when an outcome differs
//! from that list, so a fix or a regression both surface.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use poincare_core::algebra::expr::parse_rational_function;
use poincare_core::analysis::analyze;
use poincare_core::catalog::{
    claimed_poincare, hilbert_spec, list_entries, verify_all, EntryClass, ParamRanges, Params,
};
use poincare_core::counting::{assemble_hilbert, shipped_plan, PLAN_IDS};
use poincare_core::hilbert::gf_from_hilbert;
use poincare_core::jetflow::{
    invariant_checks, lie_example_table_with, metric2d_case, Scenario, DEFAULT_SEED,
};
use poincare_core::{Polynomial, Rational, VerificationStatus};

/// The reference function of the fifth singular stratum disagrees with the
/// computed counts at order 4; two explicit order-4 invariants are verified
/// by the engine.
const KNOWN_FAILURES: [u32; 1] = [5];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> (T, Duration) {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("pool");
    let start = Instant::now();
    let out = pool.install(f);
    (out, start.elapsed())
}

fn catalog_consistency() -> Outcome {
    let (reports, took) = single_threaded(|| verify_all(50, &ParamRanges::default()));
    let mut checked = 0;
    for r in &reports {
        let entry = list_entries()
            .iter()
            .find(|e| e.id == r.id)
            .expect("known id");
        if entry.class != EntryClass::Transitive || !entry.hilbert {
            continue;
        }
        checked += 1;
        check(
            r.status == VerificationStatus::Match && r.findings.is_empty(),
            format!("{} {}: {:?}", r.id, r.params, r.findings),
        )?;
        let spec = hilbert_spec(&r.id, &r.params).map_err(|e| e.to_string())?;
        let claimed = claimed_poincare(&r.id, &r.params).map_err(|e| e.to_string())?;
        check(
            gf_from_hilbert(&spec) == claimed,
            format!("{} {}: gf differs", r.id, r.params),
        )?;
    }
    check(took < Duration::from_secs(60), format!("took {took:?}"))?;
    Ok(format!(
        "{checked} entry/parameter pairs, {:.1}s single-threaded",
        took.as_secs_f64()
    ))
}

fn almost_complex_table() -> Outcome {
    let rows = [
        (2, [0, 0, 2, 24, 60, 116, 196]),
        (3, [0, 2, 64, 282, 792, 1806, 3612]),
        (4, [0, 16, 272, 1320, 4392, 11840, 27744]),
    ];
    for (n, want) in rows {
        let p = Params::n(n);
        let spec = hilbert_spec("almost-complex", &p).map_err(|e| e.to_string())?;
        check(
            spec.values(6) == ints(&want),
            format!("n={n}: {:?}", spec.values(6)),
        )?;
        let series = claimed_poincare("almost-complex", &p)
            .and_then(|f| f.series_expand(6))
            .map_err(|e| e.to_string())?;
        let want_r: Vec<Rational> = want
            .iter()
            .map(|&v| Rational::from_integer(v.into()))
            .collect();
        check(
            series.coeffs() == &want_r[..],
            format!("n={n}: series differs"),
        )?;
    }
    Ok("3x7 table".into())
}

fn rederivation() -> Outcome {
    let mut pairs = 0;
    for id in PLAN_IDS {
        let lo = match id {
            "fedosov" => 1,
            "einstein-weyl" => 3,
            "einstein" => 4,
            _ => 2,
        };
        for n in lo..=6 {
            let plan = shipped_plan(id, n).map_err(|e| e.to_string())?;
            let got = assemble_hilbert(&plan).map_err(|e| format!("{id} n={n}: {e}"))?;
            let want = hilbert_spec(id, &Params::n(n)).map_err(|e| e.to_string())?;
            check(got.values(40) == want.values(40), format!("{id} n={n}"))?;
            pairs += 1;
        }
    }
    let fed = assemble_hilbert(&shipped_plan("fedosov", 1).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    check(fed.h_value(2) == 5.into(), "fedosov n=1 h_2")?;
    check(
        (3..=40).all(|k| fed.h_value(k) == BigInt::from(3 * k)),
        "fedosov n=1 tail",
    )?;
    let ein = assemble_hilbert(&shipped_plan("einstein", 4).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    check(ein.values(4)[2..] == ints(&[5, 24, 42])[..], "einstein n=4")?;
    Ok(format!("{pairs} plan/parameter pairs to k=40"))
}

fn pole_structure() -> Outcome {
    let mut count = 0;
    for e in list_entries()
        .iter()
        .filter(|e| e.class == EntryClass::Transitive)
    {
        for p in e.samples(&ParamRanges::default()) {
            let rep = analyze(&claimed_poincare(&e.id, &p).map_err(|e| e.to_string())?);
            check(
                rep.conforms_to_pr && rep.other_unit_poles.is_empty() && rep.d <= e.base_dim(&p),
                format!("{} {p}: {rep:?}", e.id),
            )?;
            count += 1;
        }
    }
    let one_plus_z = Polynomial::from_i64(&[1, 1]);
    for n in 1..=8 {
        let rep = analyze(
            &claimed_poincare("hamiltonian-critical", &Params::n(n)).map_err(|e| e.to_string())?,
        );
        check(rep.d == n, format!("hamiltonian n={n}: d={}", rep.d))?;
        check(
            rep.other_unit_poles == vec![(one_plus_z.clone(), n)],
            format!("hamiltonian n={n}: poles"),
        )?;
        check(
            rep.sigma == Rational::new(1.into(), BigInt::from(2).pow(n as u32)),
            format!("hamiltonian n={n}: sigma={}", rep.sigma),
        )?;
    }
    Ok(format!("{count} transitive cases, hamiltonian n<=8"))
}

fn strata_table() -> Outcome {
    let start = Instant::now();
    let runs = [1u64, 2, 3]
        .iter()
        .map(|&s| lie_example_table_with(7, s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    check(
        runs.windows(2).all(|w| w[0] == w[1]),
        "tables differ across seeds",
    )?;
    let mut bad = Vec::new();
    for row in &runs[0] {
        let reference = row.expected_p.as_ref().ok_or("row without reference P")?;
        let series = reference.series_expand(7).map_err(|e| e.to_string())?;
        let h: Vec<Rational> = row
            .h
            .iter()
            .map(|&v| Rational::from_integer(v.into()))
            .collect();
        if series.coeffs() != &h[..] || &row.p != reference {
            bad.push(format!(
                "{}: computed {} vs reference {}",
                row.label,
                row.p.to_text(),
                reference.to_text()
            ));
        }
    }
    check(start.elapsed() < Duration::from_secs(300), "over 5 minutes")?;
    check(bad.is_empty(), bad.join("; "))?;
    Ok(format!("{} rows, 3 seeds", runs[0].len()))
}

fn invariant_annihilation() -> Outcome {
    let scn = Scenario::builtin("lie-example").map_err(|e| e.to_string())?;
    let listed = [
        ("I1", "S1"),
        ("I2", "S1"),
        ("I3", "S1"),
        ("I1", "S2"),
        ("I3", "S2"),
        ("I4", "S2"),
        ("I1", "S3"),
        ("I2", "S3"),
        ("I3a", "S3"),
        ("I3b", "S3"),
    ];
    let outcomes = invariant_checks(&scn, DEFAULT_SEED).map_err(|e| e.to_string())?;
    let find = |l: &str, s: &str| outcomes.iter().find(|o| o.label == l && o.stratum == s);
    for (l, s) in listed {
        let o = find(l, s).ok_or(format!("{l} on {s} missing"))?;
        check(o.annihilated, format!("{l} on {s} not annihilated"))?;
    }
    let control = find("u20", "S1").ok_or("control missing")?;
    check(!control.annihilated, "u20 on S1 annihilated")?;
    Ok(format!("{} listed invariants, 1 control", listed.len()))
}

fn metric_lift() -> Outcome {
    let h = metric2d_case(4, DEFAULT_SEED).map_err(|e| e.to_string())?;
    check(h == vec![0, 0, 1, 1, 3], format!("h = {h:?}"))?;
    let riem = hilbert_spec("riemannian", &Params::n(2)).map_err(|e| e.to_string())?;
    check(riem.values(4) == ints(&h), "catalog riemannian n=2 differs")?;
    Ok("h = [0,0,1,1,3]".into())
}

fn identities() -> Outcome {
    let c = |id: &str, p: Params| claimed_poincare(id, &p).map_err(|e| e.to_string());
    check(
        c("projective-connections", Params::n(2))? == c("ode-cubic", Params::new())?,
        "projective n=2",
    )?;
    let z = parse_rational_function("z").map_err(|e| e.to_string())?;
    for n in 2..=8 {
        let r = (&c("riemannian", Params::n(n))? / &z).map_err(|e| e.to_string())?;
        check(
            c("metrizable-connections", Params::n(n))? == r,
            format!("metrizable n={n}"),
        )?;
    }
    let k1 = hilbert_spec("kaehler", &Params::n(1)).map_err(|e| e.to_string())?;
    check(
        k1 == hilbert_spec("riemannian", &Params::n(2)).map_err(|e| e.to_string())?,
        "kaehler n=1",
    )?;
    Ok("3 identities".into())
}

fn property_suites() -> Outcome {
    let results = common::run_all(common::CASES);
    let failed: Vec<String> = results
        .iter()
        .filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}")))
        .collect();
    check(failed.is_empty(), failed.join("; "))?;
    Ok(format!(
        "{} suites x {} cases, seed {:#x}",
        results.len(),
        common::CASES,
        common::SEED
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "catalog consistency", catalog_consistency),
        (2, "almost-complex table", almost_complex_table),
        (3, "plan rederivation", rederivation),
        (4, "pole structure", pole_structure),
        (5, "strata table", strata_table),
        (6, "invariant annihilation", invariant_annihilation),
        (7, "metric lift", metric_lift),
        (8, "identities", identities),
        (9, "property suites", property_suites),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let outcome = run();
        let known = KNOWN_FAILURES.contains(&id);
        match &outcome {
            Ok(detail) => println!("criterion {id} {name}: PASS ({detail})"),
            Err(why) => println!("criterion {id} {name}: FAIL ({why})"),
        }
        if outcome.is_ok() == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
