//! End-to-end checks of the curve-side verification reports through their
//! JSON serialization, the way the command-line frontend consumes them.

use std::collections::HashMap;

use ntcurves::formal::ramified_inertia_report;
use ntcurves::sylow::sylow2_check;
use ntcurves::weierstrass::{CurveModel, Place};
use ntcurves::x015::{parse_assumptions, x015_report};
use ntcurves::CurveError;

fn as_json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("report serializes to valid JSON")
}

#[test]
fn ramified_inertia_chain() {
    let report = ramified_inertia_report();
    assert!(report.passed(), "{}", report.to_text());
    let json = as_json(&report.to_json_string());
    assert_eq!(json["id"], "ramified-inertia");
    assert_eq!(json["values"]["residue_count"], 4);
    assert_eq!(json["values"]["newton_hull"], serde_json::json!([[1, 2], [3, 1], [9, 0]]));
    let ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
    assert!(ids.contains(&"inertia-level") && ids.contains(&"unramified-control"));
}

#[test]
fn x015_report_roundtrip() {
    let assumptions: HashMap<String, String> = parse_assumptions(
        "rank.X015.Q=0\nrank.960G3.Q=0\nrank.4335D3.Q=0\n\
         label.twist.d2=960G3\nlabel.twist.d17=4335D3\n",
    )
    .unwrap();
    for (d, count_key, count) in [(2i64, "count-7", 8u64), (17, "count-13", 16)] {
        let report = x015_report(d, &assumptions).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        let check = report.checks.iter().find(|c| c.id == count_key).unwrap();
        assert_eq!(check.computed, count.to_string());
        // Every external fact is surfaced as an assumption.
        assert!(report.assumptions.iter().any(|a| a.contains("rank.X015.Q")));
    }
    assert_eq!(
        x015_report(2, &HashMap::new()).unwrap_err(),
        CurveError::MissingAssumption { key: "label.twist.d2".to_string() }
    );
}

#[test]
fn sylow_report_roundtrip() {
    let report = sylow2_check();
    assert!(report.passed(), "{}", report.to_text());
    let json = as_json(&report.to_json_string());
    assert_eq!(json["values"]["group_order"], 16);
    assert_eq!(json["values"]["subgroup_order"], 8);
}

#[test]
fn parsed_models_flow_into_reduction_queries() {
    let model = CurveModel::parse("1,1,1,-10,-10 over Q(sqrt(2))").unwrap();
    let (bound, counts) = model.torsion_bound(&[7]).unwrap();
    assert_eq!((bound, counts), (8, vec![(7, 8)]));

    // The same text model over Q answers rational-place questions.
    let rational = CurveModel::parse("1,1,1,-10,-10 over Q").unwrap();
    assert!(rational.is_supersingular(&Place::Rational(5)).is_err());
}
