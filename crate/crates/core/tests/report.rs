use denniston::arcs::QuadraticForm;
use denniston::gf::FieldContext;
use denniston::report::*;

fn cfg() -> RunConfig {
    RunConfig {
        draws: 1000,
        search_budget: 20_000,
        ..RunConfig::default()
    }
}

#[test]
fn table1_report() {
    let r = reproduce("table1", &cfg()).unwrap();
    assert!(r.passed, "{}", r.to_json());
    let codes = r.results["codes"].as_array().unwrap();
    assert_eq!(codes[0]["length"], 120);
    assert_eq!(codes[0]["min_distance"], 103);
    assert_eq!(codes[1]["length"], 119);
    assert_eq!(codes[1]["min_distance"], 103);
    assert_eq!(r.schema_version, SCHEMA_VERSION);
}

#[test]
fn table2_report() {
    let r = reproduce("table2", &cfg()).unwrap();
    println!("{}", r.to_json());
    let codes = r.results["codes"].as_array().unwrap();
    let q16 = &codes[0];
    assert_eq!(q16["min_distance"], 43);
    assert_eq!(q16["fixture_comparison"]["match"], true);
    let omit = &q16["omission_test"];
    assert_eq!(omit["missing_classes"], 273);
    assert_eq!(omit["zero_linear_part_explains"], false);
    let q32 = &codes[1];
    assert_eq!(q32["length"], 99);
    assert_eq!(q32["min_distance"], 87);
    assert_eq!(q32["fixture_comparison"]["match"], false);
    assert!(!r.passed);
}

#[test]
fn report_is_reproducible() {
    let a = reproduce("table1", &cfg()).unwrap();
    let b = reproduce(
        "table1",
        &RunConfig {
            workers: 1,
            ..cfg()
        },
    )
    .unwrap();
    assert_eq!(a.config_hash, b.config_hash);
    assert_eq!(a.stable_json(), b.stable_json());
}

#[test]
fn unknown_target() {
    assert!(matches!(
        reproduce("table9", &cfg()),
        Err(ReportError::UnknownTarget(_))
    ));
}

#[test]
fn sweep_q16_pairs() {
    let f = FieldContext::with_degree(4).unwrap();
    let r = sweep_subgroups(&f, 4, QuadraticForm::standard(&f), false, &cfg()).unwrap();
    assert_eq!(r.codes.len(), 35);
    assert!(r.codes.iter().all(|c| c.length == 51));
}

#[test]
fn sweep_refuses_over_budget() {
    let f = FieldContext::with_degree(6).unwrap();
    let c = RunConfig {
        budget: 1 << 20,
        ..cfg()
    };
    let err = sweep_subgroups(&f, 8, QuadraticForm::standard(&f), false, &c).unwrap_err();
    assert!(matches!(err, ReportError::SweepTooLarge { .. }));
}
