//! End-to-end runs through the public API: scheme construction, the Honda
//! system report, the extension-dimension report, and the ramified-model
//! report, consumed the way the command-line layer consumes them.

use ntcore::extdeform::{ext_report, ramified_report, ExtDeformError};
use ntcore::field::FiniteField;
use ntcore::raynaud::RaynaudScheme;
use ntcore::report::Status;

#[test]
fn honda_report_roundtrip() {
    let scheme = RaynaudScheme::new(3, 2, &[3, 1]).unwrap();
    let report = scheme.honda_system().unwrap().report();
    assert_eq!(report.status, Status::Pass, "{}", report.to_text());
    let json = report.to_json_string();
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed["id"], "honda-system");
    assert_eq!(parsed["values"]["l_basis"][0], "e2");
    // The text rendering carries one line per check.
    let text = report.to_text();
    assert!(text.lines().any(|l| l.contains("fv-zero")));
}

#[test]
fn extension_report_roundtrip() {
    let k = FiniteField::new(3, 2).unwrap();
    let f = FiniteField::new(3, 1).unwrap();
    let report = ext_report(&k, &f).unwrap();
    assert_eq!(report.status, Status::Pass, "{}", report.to_text());
    let parsed: serde_json::Value =
        serde_json::from_str(&report.to_json_string()).unwrap();
    assert_eq!(parsed["values"]["dimension"], 4);
}

#[test]
fn ramified_report_roundtrip() {
    let k = FiniteField::new(3, 1).unwrap();
    let report = ramified_report(&k, &k, 2).unwrap();
    assert_eq!(report.status, Status::Pass, "{}", report.to_text());
    let parsed: serde_json::Value =
        serde_json::from_str(&report.to_json_string()).unwrap();
    assert_eq!(parsed["values"]["rank_over_s"], 4);
    assert_eq!(parsed["values"]["total_bound_f"], 3);
    assert_eq!(parsed["values"]["corollary_bound_f"], 2);
}

#[test]
fn ramified_report_rejects_bad_degrees() {
    let k = FiniteField::new(3, 1).unwrap();
    match ramified_report(&k, &k, 5) {
        Err(ExtDeformError::DegreeOutOfRange { e: 5, p: 3, max: 2 }) => {}
        other => panic!("expected a degree error, got {other:?}"),
    }
}
