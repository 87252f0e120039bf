//! Every suite passes at its default parameters.

use tk_harness::{run_suite, Params, SUITES};

#[test]
fn all_suites_pass_with_defaults() {
    for s in SUITES {
        let r = run_suite(s.name, &Params::default()).unwrap();
        assert!(r.passed(), "{}: {:?}", s.name, r.violations);
        assert!(r.instances_checked > 0, "{} checked nothing", s.name);
        assert_eq!(r.suite, s.name);
    }
}

#[test]
fn exhaustive_counts_are_catalog_sizes() {
    let r = run_suite("gallai", &Params::default().with_n(7).with_mode(tk_harness::Mode::Exhaustive)).unwrap();
    assert_eq!(r.instances_checked, 456);
    let r = run_suite("theorem3", &Params::default().with_n(9)).unwrap();
    assert_eq!(r.instances_checked, 191_536);
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(run_suite("inversion", &Params::default().with_n(2)).is_err());
    assert!(run_suite("theorem3", &Params::default().with_n(8)).is_err());
    assert!(run_suite("eight-vertex", &Params::default().with_n(9)).is_err());
    assert!(run_suite("unknown", &Params::default()).is_err());
}
