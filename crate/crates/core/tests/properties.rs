mod common;

use common::{run_all, CASES};

#[test]
fn algebra_and_hilbert_properties() {
    let results = run_all(CASES);
    let failed: Vec<String> = results
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert_eq!(results.len(), 9);
}

#[test]
fn generated_specs_are_canonical() {
    let s = common::sample(common::hilbert_spec());
    assert!(s.exceptions().keys().all(|&k| k < s.tail_start()));
    assert!(s.exceptions().values().all(|v| *v != 0.into()));
}
