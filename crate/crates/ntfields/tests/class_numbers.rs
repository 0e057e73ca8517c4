//! End-to-end checks of the class-number machinery through the public API:
//! the two degree-4 verifications, the quadratic control that must **not**
//! report class number one, and the field-spec parser feeding both.

use ntfields::biquadratic::{class_number_one_check, BiquadraticFieldData};
use ntfields::quadratic::{quad_class_number, quad_class_report};
use ntfields::{parse_field_spec, FieldSpec, NumberFieldError};

#[test]
fn both_biquadratic_fields_have_class_number_one() {
    for (spec, disc, primes) in [
        ("Q(sqrt(2), sqrt(-3))", 576, vec![2u64, 3]),
        ("Q(sqrt(17), sqrt(-3))", 2601, vec![2, 3, 5, 7]),
    ] {
        let (a, b) = match parse_field_spec(spec).unwrap() {
            FieldSpec::Biquadratic(a, b) => (a, b),
            other => panic!("expected a biquadratic spec, got {other:?}"),
        };
        let data = BiquadraticFieldData::new(a, b).unwrap();
        assert_eq!(data.discriminant, disc);
        assert_eq!(data.primes_below_bound(), primes);

        let report = class_number_one_check(&data);
        assert!(report.passed(), "{}", report.to_text());
        let json: serde_json::Value = serde_json::from_str(&report.to_json_string()).unwrap();
        assert_eq!(json["values"]["class_number"], 1);
        assert_eq!(json["id"], "class-number-one");

        // Every prime below the bound carries explicit generators for all
        // of its prime ideals.
        for q in &primes {
            let entry = &json["values"]["factorizations"][q.to_string()];
            for ideal in entry["ideals"].as_array().unwrap() {
                assert!(ideal["generator"].is_string(), "missing generator above {q}");
            }
        }
    }
}

#[test]
fn the_control_field_is_not_claimed_principal() {
    // Q(sqrt(-6)) has two ideal classes; the exact form count reports 2 and
    // the report pipeline never emits a class-number-one claim for it.
    assert_eq!(quad_class_number(-6).unwrap(), 2);
    let report = quad_class_report(-6).unwrap();
    assert!(report.passed());
    let json: serde_json::Value = serde_json::from_str(&report.to_json_string()).unwrap();
    assert_eq!(json["values"]["class_number"], 2);
    assert_eq!(
        json["values"]["reduced_forms"],
        serde_json::json!(["(1, 0, 6)", "(2, 0, 3)"])
    );
}

#[test]
fn field_spec_parse_errors_surface_cleanly() {
    assert!(matches!(
        parse_field_spec("Q(cbrt(2))"),
        Err(NumberFieldError::ParseError(_))
    ));
    assert_eq!(
        BiquadraticFieldData::new(12, -3).unwrap_err(),
        NumberFieldError::InvalidFieldDatum(12)
    );
    assert!(matches!(
        quad_class_number(10),
        Err(NumberFieldError::SearchInconclusive { target: 2, height: _ })
    ));
}
