use tricover::suites::{run_suite, Suite, SuiteConfig};

#[test]
fn cheap_suites_pass() {
    for suite in [Suite::Group, Suite::Characteristics, Suite::Quadrature, Suite::Mirror] {
        let r = run_suite(suite, &SuiteConfig { samples: Some(2), ..SuiteConfig::default() }).unwrap();
        assert!(r.passed(), "{}: {:?}", suite.name(), r.failures());
        assert!(!r.checks.is_empty());
    }
}

#[test]
fn seeded_runs_repeat() {
    let cfg = SuiteConfig { samples: Some(3), seed: 9, ..SuiteConfig::default() };
    let a = run_suite(Suite::Vanishing, &cfg).unwrap();
    let b = run_suite(Suite::Vanishing, &cfg).unwrap();
    assert_eq!(a.checks, b.checks);
    let c = run_suite(Suite::Vanishing, &SuiteConfig { seed: 10, ..cfg }).unwrap();
    assert_ne!(a.checks, c.checks);
}

#[test]
fn names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(Suite::from_name(s.name()).unwrap(), s);
    }
    assert!(Suite::from_name("everything").is_err());
    assert!(run_suite(Suite::Group, &SuiteConfig { eps: 0.0, ..SuiteConfig::default() }).is_err());
}
