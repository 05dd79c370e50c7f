use tl_core::suites::{check_names, run_check, run_suite, verify_json, SUITES};
use tl_core::{QMode, TlError};

#[test]
fn check_names_are_unique() {
    let mut all: Vec<&str> = SUITES.iter().flat_map(|s| check_names(s).unwrap()).collect();
    let n = all.len();
    all.sort();
    all.dedup();
    assert_eq!(all.len(), n);
}

#[test]
fn light_suites_pass_at_a_root() {
    let m = QMode::for_l(4);
    for s in ["scalars", "diagrams", "projectives"] {
        let r = run_suite(s, &m).unwrap();
        assert!(r.passed(), "{s}: {:?}", r.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect::<Vec<_>>());
    }
}

#[test]
fn observations_do_not_gate() {
    let r = run_suite("spinchain", &QMode::Generic).unwrap();
    let literal = r.check("form_restriction_literal").unwrap();
    assert!(!literal.gating && !literal.passed);
    assert!(r.check("form_restriction").unwrap().passed);
    assert!(r.passed());
}

#[test]
fn single_check_report_is_deterministic() {
    let a = run_check("diagrams", "associativity", &QMode::Generic).unwrap();
    let b = run_check("diagrams", "associativity", &QMode::Generic).unwrap();
    assert_eq!(a, b);
    assert!(run_check("diagrams", "nope", &QMode::Generic).is_err());
}

#[test]
fn verify_document_shape() {
    let doc = verify_json("scalars", &QMode::Generic).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "verify");
    assert_eq!(doc["q"], "generic");
    assert_eq!(doc["suites"][0]["suite"], "scalars");
    assert!(doc.get("timing_ms").is_none());
    assert!(matches!(verify_json("bogus", &QMode::Generic), Err(TlError::UnknownSuite(_))));
}
