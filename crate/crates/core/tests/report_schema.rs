use hline_core::classify::classify;
use hline_core::families::FamilySpec;
use hline_core::io::{report_for, REPORT_SCHEMA};
use hline_core::Budget;

fn validate(spec: &str, n: usize, budget: Budget) -> serde_json::Value {
    let g = spec.parse::<FamilySpec>().unwrap().build().unwrap();
    let report = report_for(&g, &classify(&g, n, budget));
    let json = serde_json::to_value(&report).unwrap();
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&json).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{spec} n={n}: {errors:?}");
    json
}

#[test]
fn every_outcome_validates() {
    let converged = validate("C6", 4, Budget::default());
    assert_eq!(converged["outcome"], "Converged");
    assert_eq!(converged["N"], 0);
    let limit = validate("G(r=1,m=3)", 4, Budget::default());
    assert_eq!(limit["N"], 1);
    let c4 = hline_core::io::parse_edge_list(limit["limit"].as_str().unwrap()).unwrap();
    assert!(c4.is_cycle_graph() && c4.order() == 4);
    validate("C4", 5, Budget::default());
    for spec in ["F7", "G(r=3,m=4)", "CL(3,3,2)"] {
        let n = if spec == "CL(3,3,2)" { 6 } else { 5 };
        let diverged = validate(spec, n, Budget::default());
        assert_eq!(diverged["outcome"], "DivergedByOrder");
    }
    let capped = Budget { max_iter: 0, ..Budget::default() };
    assert_eq!(validate("G(r=2,m=3)", 5, capped)["unknown_reason"], "IterCap");
}

#[test]
fn schema_rejects_malformed_reports() {
    let g = "C6".parse::<FamilySpec>().unwrap().build().unwrap();
    let mut json = serde_json::to_value(report_for(&g, &classify(&g, 4, Budget::default()))).unwrap();
    json["outcome"] = "Sideways".into();
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    assert!(!jsonschema::validator_for(&schema).unwrap().is_valid(&json));
}
