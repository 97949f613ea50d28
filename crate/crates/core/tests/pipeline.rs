//! End-to-end paths through the public API: parse, analyze, check, report.

use relface::io::parse_complex;
use relface::stanley_reisner::{h_double_prime, h_prime};
use relface::verify::{run_check, run_corpus, suite, Analysis, CheckId, CheckOptions, Recipe};
use relface::{FieldSpec, RelativeComplex};

#[test]
fn parsed_file_runs_through_the_harness() {
    let text = "# solid tetrahedron\n1 2 3 4\n";
    let delta = parse_complex(text).unwrap();
    let a = Analysis::new(delta, FieldSpec::Rational, "tetrahedron");
    let r = run_check(CheckId::DehnSommerville, &a, &CheckOptions::default());
    assert!(r.passed(), "{r:?}");
}

#[test]
fn suite_examples() {
    let options = CheckOptions::default();
    for (name, ids) in [
        ("balls-small", [CheckId::DualitySigma, CheckId::Main1, CheckId::InteriorSigmaBound]),
        ("spheres-small", [CheckId::LbtClosed, CheckId::ClosedSigmaBound, CheckId::SigmaGBound]),
    ] {
        let report = run_corpus(&suite(name).unwrap(), &ids, FieldSpec::Rational, &options).unwrap();
        assert_eq!(report.summary.failed, 0, "{name}");
        for id in ids {
            assert!(report.reports.iter().any(|r| r.check == id && r.passed()), "{name} {id}");
        }
    }
}

#[test]
fn reports_are_sorted_by_check_then_input() {
    let ids = [CheckId::Morse, CheckId::DehnSommerville];
    let report = run_corpus(&suite("balls-small").unwrap(), &ids, FieldSpec::Rational, &CheckOptions::default()).unwrap();
    let keys: Vec<_> = report.reports.iter().map(|r| (r.check, r.input.clone())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(report.reports[0].check, CheckId::DehnSommerville);
}

#[test]
fn main2_skips_without_wlp_witness() {
    // Zero trials never witness the WLP, so the hypothesis gate must skip.
    let a = Analysis::new("torus".parse::<Recipe>().unwrap().build().unwrap(), FieldSpec::Rational, "torus");
    let options = CheckOptions { wlp_trials: 0, ..CheckOptions::default() };
    let r = run_check(CheckId::Main2, &a, &options);
    assert!(r.skipped());
    assert!(r.skipped_reason.unwrap().contains("WLP"));
}

#[test]
fn schenzel_numbers_of_a_torus() {
    let t = "torus".parse::<Recipe>().unwrap().build().unwrap();
    let psi = RelativeComplex::absolute(t);
    // f = (7, 21, 14), b̃_1 = 2, b̃_2 = 1.
    assert_eq!(psi.h_vector().unwrap().0, vec![1, 4, 10, -1]);
    assert_eq!(h_prime(&psi, FieldSpec::Rational).unwrap(), vec![1, 4, 10, 1]);
    assert_eq!(h_double_prime(&psi, FieldSpec::Rational).unwrap(), vec![1, 4, 4, 1]);
}

#[test]
fn sub_pair_morse() {
    let delta = "cross(3)".parse::<Recipe>().unwrap().build().unwrap();
    let sub = "bd_simplex(2)".parse::<Recipe>().unwrap().build().unwrap();
    let a = Analysis::new(delta.clone(), FieldSpec::Rational, "cross(3)").with_sub(sub.with_ground(delta.ground_set()));
    let r = run_check(CheckId::Morse, &a, &CheckOptions::default());
    assert!(r.passed(), "{r:?}");
}
