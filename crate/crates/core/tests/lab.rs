use superell::error::Error;
use superell::lab::{self, run_suite, SUITES};
use superell::par::Mode;

#[test]
fn sequential_and_parallel_agree() {
    for (a, b) in [
        (lab::orbits_suite(Mode::Sequential), lab::orbits_suite(Mode::Parallel)),
        (lab::heart_suite(Mode::Sequential), lab::heart_suite(Mode::Parallel)),
        (lab::cyclo_suite(Mode::Sequential), lab::cyclo_suite(Mode::Parallel)),
    ] {
        let (a, b) = (a.unwrap(), b.unwrap());
        assert!(a.passed(), "{:?}", a.failures);
        assert_eq!((a.name, a.groups, a.primes, a.checks), (b.name, b.groups, b.primes, b.checks));
    }
}

#[test]
fn engel_counts_samples() {
    let r = lab::engel_suite(Mode::Parallel, 20).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    assert_eq!(r.checks, lab::DEGREE_PRIME_PAIRS.len() * 21);
}

#[test]
fn suite_names() {
    assert_eq!(run_suite("qln", Mode::Sequential).unwrap().len(), 1);
    assert!(SUITES.contains(&"all"));
    assert!(matches!(run_suite("bogus", Mode::Parallel), Err(Error::Input(_))));
}

#[test]
fn summary_format() {
    let r = lab::filtration_suite(Mode::Parallel).unwrap();
    let s = r.summary();
    assert!(s.starts_with("filtration: 14 groups x 3 primes"), "{s}");
    assert!(s.contains(", 0 failures"));
}
