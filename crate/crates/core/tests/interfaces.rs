//! Public interface behavior: error reporting, serialization round trips and
//! report determinism.

use num_complex::Complex64;
use projdunkl_core::kummer::bold_m;
use projdunkl_core::rational::{int, rat};
use projdunkl_core::rootgeom::{build_subsystem_b, reflect, validate_subsystem, RationalVector};
use projdunkl_core::testfn::{catalog, gaussian_integral};
use projdunkl_core::transform::{kummer_transform, TransformRequest};
use projdunkl_core::verify::{Fault, Suite};
use projdunkl_core::{
    chi_poly_scaled, parse_poly, run_suites, Error, OrthogonalSubsystem, ProjectionDunklOperator, SuiteConfig,
};

#[test]
fn parse_errors_carry_a_column() {
    match parse_poly("x1 + * x2", None) {
        Err(Error::Parse { column, .. }) => assert!((1..=6).contains(&column), "column {column}"),
        other => panic!("expected a parse error, got {other:?}"),
    }
    assert!(parse_poly("x3", Some(2)).is_err());
    assert!("(1, a)".parse::<RationalVector>().is_err());
}

#[test]
fn subsystem_validation_names_the_problem() {
    let v = |c: &[i64]| RationalVector::from_ints(c);
    assert_eq!(validate_subsystem(vec![v(&[1, 1]), v(&[1, 0])], vec![int(1); 2], 2), Err(Error::NotOrthogonal(1, 2)));
    assert_eq!(validate_subsystem(vec![v(&[0, 0])], vec![int(1)], 2), Err(Error::ZeroRoot { index: 1 }));
    assert!(matches!(
        validate_subsystem(vec![v(&[1, 0])], vec![], 2),
        Err(Error::MultiplicityCount { expected: 1, found: 0 })
    ));
}

#[test]
fn reflection_of_a_vector_onto_its_mirror() {
    let x = RationalVector::from_ints(&[1, 1]);
    assert_eq!(reflect(&RationalVector::from_ints(&[2, 0]), &x).unwrap(), RationalVector::from_ints(&[-1, 1]));
    assert_eq!(reflect(&RationalVector::from_ints(&[1, 1]), &x).unwrap(), RationalVector::from_ints(&[-1, -1]));
}

#[test]
fn subsystem_json_round_trip() {
    let s = build_subsystem_b(4, vec![rat(1, 2), int(2)], vec![rat(3, 4), int(1)]).unwrap();
    let back = OrthogonalSubsystem::from_json(&s.to_json()).unwrap();
    assert_eq!(back, s);
    let err = OrthogonalSubsystem::from_json(r#"{"dim":2,"roots":[["1","1"],["1","0"]],"kappas":["1","1"]}"#);
    assert!(err.unwrap_err().to_string().contains("not orthogonal"));
}

#[test]
fn documented_examples() {
    let s = projdunkl_core::rootgeom::build_subsystem_direct(1, vec![rat(1, 2)]).unwrap();
    let op = ProjectionDunklOperator::new(s, "(1)".parse().unwrap()).unwrap();
    assert_eq!(op.apply_poly(&parse_poly("x1^2", None).unwrap()).unwrap().to_string(), "5/2*x1");

    let s = projdunkl_core::rootgeom::build_subsystem_direct(1, vec![int(1)]).unwrap();
    let chi = chi_poly_scaled(&parse_poly("x1^2", None).unwrap(), &s).unwrap();
    assert_eq!(format!("{} (scale: {})", chi.poly, chi.scale), "1/3*x1^2 (scale: 1/Γ(2))");

    assert_eq!(bold_m(0.0, Complex64::new(1.0, 0.0)).unwrap().re, std::f64::consts::E);
}

#[test]
fn fourier_limits_of_the_transform() {
    let f = catalog("indicator").unwrap();
    let v = kummer_transform(&TransformRequest::new(0.0, f.as_ref(), vec![std::f64::consts::PI]).unwrap()).unwrap();
    assert!(v[0].norm() < 1e-12, "{}", v[0]);

    let g = catalog("gaussian").unwrap();
    let v = kummer_transform(&TransformRequest::new(0.0, g.as_ref(), vec![0.0]).unwrap()).unwrap();
    let exact = (2.0 * std::f64::consts::PI).sqrt();
    assert!((v[0].re - exact).abs() < 1e-8 && v[0].im.abs() < 1e-12, "{}", v[0]);
    assert!((gaussian_integral() - exact).abs() < 1e-8);
    assert!(catalog("sinc").unwrap_err().to_string().contains("sinc"));
}

fn small(suites: Vec<Suite>) -> SuiteConfig {
    SuiteConfig { suites, max_dimension: 3, max_degree: 3, samples: 20, ..SuiteConfig::default() }
}

#[test]
fn reports_are_deterministic() {
    let cfg = SuiteConfig { seed: 7, ..small(vec![Suite::Geometry, Suite::Commutativity, Suite::Inverse]) };
    let a = run_suites(&cfg).unwrap();
    let b = run_suites(&cfg).unwrap();
    assert_eq!(a.to_jsonl(false), b.to_jsonl(false));
    assert_eq!(a.summary_json(), b.summary_json());
    let c = run_suites(&SuiteConfig { seed: 8, ..cfg }).unwrap();
    assert_ne!(a.to_jsonl(false), c.to_jsonl(false));
}

#[test]
fn degree_zero_runs_only_constant_checks() {
    let cfg = SuiteConfig { max_degree: 0, ..small(Suite::ALL.to_vec()) };
    let report = run_suites(&cfg).unwrap();
    assert!(report.all_passed(), "{:?}", report.failures().next());
    assert!(report.records.iter().all(|r| {
        let suite: Suite = r.suite.parse().unwrap();
        suite.is_polynomial()
    }));
}

#[test]
fn fault_produces_polynomial_witness() {
    let cfg = SuiteConfig { fault: Some(Fault::PerturbKappa), ..small(vec![Suite::Commutativity]) };
    let report = run_suites(&cfg).unwrap();
    let bad = report.failures().find(|r| r.name == "commutator").expect("a commutator failure");
    let witness = bad.witness.as_ref().unwrap();
    assert!(witness["inputs"]["poly"].is_string());
    let poly = witness["evidence"]["witness"].as_str().unwrap();
    assert!(parse_poly(poly, None).is_ok(), "{poly}");
}

#[test]
fn report_files_are_written() {
    let dir = std::env::temp_dir().join(format!("projdunkl-report-{}", std::process::id()));
    let report = run_suites(&small(vec![Suite::Inverse])).unwrap();
    report.write(&dir, false).unwrap();
    let lines = std::fs::read_to_string(dir.join("records.jsonl")).unwrap();
    assert_eq!(lines.lines().count(), report.records.len());
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["passed"], report.summary.passed);
    assert_eq!(summary["config"]["max_degree"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invalid_config_is_rejected_before_running() {
    let err = run_suites(&SuiteConfig { max_degree: 11, ..SuiteConfig::default() }).unwrap_err();
    assert!(err.to_string().contains("max_degree"));
}
