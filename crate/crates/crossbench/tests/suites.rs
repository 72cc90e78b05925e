use std::collections::BTreeSet;

use crossbench::{run_suite, Config, Report, RunOptions, Status, Suite};
use crossbench_core::fixtures;

fn quick() -> RunOptions {
    RunOptions {
        seed: 42,
        samples: 12,
        ..RunOptions::default()
    }
}

/// Check ids covering each acceptance criterion, in order.
const CRITERIA: [&[&str]; 9] = [
    &[
        "core.convolution.associative",
        "core.convolution.submultiplicative",
    ],
    &["core.realization.direct_sum"],
    &[
        "beurling.left_regular.identity",
        "beurling.left_regular.embedding",
    ],
    &["beurling.chain", "beurling.isometric_regime"],
    &[
        "correspondence.general.roundtrip",
        "correspondence.beurling.roundtrip",
        "correspondence.bounds",
        "correspondence.classical",
    ],
    &[
        "anti.hat.reverses_products",
        "anti.correspondence.roundtrip",
        "anti.bimodule.roundtrip",
    ],
    &[
        "actions.twisted.valid",
        "actions.commuting.valid",
        "actions.equivalence.t",
        "actions.equivalence.s",
        "actions.commuting.canonical",
        "actions.companion",
    ],
    &[
        "tensor.decompose_odot",
        "tensor.uniqueness",
        "tensor.norm_bound",
        "tensor.bimodule_encoding",
    ],
    &["core.kernel.oracle"],
];

#[test]
fn suite_all_covers_every_criterion_and_passes() {
    let report = run_suite(&fixtures::all(), Suite::All, &quick());
    assert!(report.passed(), "{}", report.to_text());
    let ids: BTreeSet<&str> = report.checks.iter().map(|c| c.check_id.as_str()).collect();
    for (i, checks) in CRITERIA.iter().enumerate() {
        for id in *checks {
            assert!(ids.contains(id), "criterion {} check {id} missing", i + 1);
            assert!(
                report
                    .checks
                    .iter()
                    .any(|c| c.check_id == *id && c.status == Status::Pass),
                "criterion {} check {id} never passes",
                i + 1
            );
        }
    }
}

#[test]
fn every_check_appears_once_per_fixture() {
    let report = run_suite(&fixtures::all(), Suite::All, &quick());
    let keys: Vec<(&str, &str)> = report
        .checks
        .iter()
        .map(|c| (c.check_id.as_str(), c.fixture_id.as_str()))
        .collect();
    let unique: BTreeSet<_> = keys.iter().collect();
    assert_eq!(unique.len(), keys.len());
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(sorted, keys);
}

#[test]
fn reports_are_byte_identical_and_roundtrip() {
    let fx = [fixtures::f2(), fixtures::f5()];
    let a = run_suite(&fx, Suite::All, &quick()).to_json();
    let b = run_suite(&fx, Suite::All, &quick()).to_json();
    assert_eq!(a, b);
    let parsed = Report::from_json(&a).unwrap();
    assert_eq!(parsed.to_json(), a);
    let other = RunOptions {
        seed: 43,
        ..quick()
    };
    assert_ne!(run_suite(&fx, Suite::All, &other).to_json(), a);
}

#[test]
fn actions_on_the_matrix_fixture() {
    let report = run_suite(&[fixtures::f3()], Suite::Actions, &quick());
    assert!(report.passed(), "{}", report.to_text());
    let detail = |id: &str| {
        report
            .checks
            .iter()
            .find(|c| c.check_id == id)
            .and_then(|c| c.detail.clone())
            .unwrap()
    };
    assert_eq!(detail("actions.twisted.valid"), "16 lines");
    assert_eq!(detail("actions.commuting.valid"), "8 lines");
}

#[test]
fn hypotheses_are_skipped_not_failed() {
    let report = run_suite(&[fixtures::f4()], Suite::Correspondence, &quick());
    assert!(report.passed());
    assert!(report
        .checks
        .iter()
        .all(|c| c.status == Status::SkippedHypothesis && c.detail.is_some()));
}

#[test]
fn failures_carry_a_reproducer() {
    let opts = RunOptions {
        tolerance: 1e-300,
        ..quick()
    };
    let report = run_suite(&[fixtures::f3()], Suite::Core, &opts);
    let failed = report
        .checks
        .iter()
        .find(|c| c.check_id == "core.convolution.associative")
        .unwrap();
    assert_eq!(failed.status, Status::Fail);
    let f = failed.reproducer.as_ref().expect("reproducer");
    assert!(f.to_function(&fixtures::f3()).is_ok());
}

#[test]
fn custom_systems_run_through_the_suites() {
    let cfg = Config::load(std::path::Path::new(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/data/z3.json"
    )))
    .unwrap();
    let fixtures = cfg.fixtures().unwrap();
    let report = run_suite(&fixtures, Suite::All, &quick());
    assert!(report.passed(), "{}", report.to_text());
    assert_eq!(report.fixtures, ["F1", "Z3"]);
}
