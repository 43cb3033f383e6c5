use std::sync::Arc;

use proptest::prelude::*;
use superell::base::{Base, BasePoly};
use superell::cyclo::contains_root_of_unity;
use superell::error::Error;
use superell::exactmath::integer::{gcd, is_prime};
use superell::galois::Property;
use superell::parse::parse_polynomial;
use superell::permgrp::{catalog_group, normal_subgroups, transitive_catalog, PermutationGroup};
use superell::verdict::{
    analyze, apply_knowledge_rules, build_certificate, obstruction_prime_existence,
    select_theorem, validate_problem, Conclusion, Counterpart, ProblemSpec, Status, Theorem,
    NO_THEOREM_REASON,
};

fn poly(text: &str, base: Base) -> BasePoly {
    parse_polynomial(text, base).unwrap()
}

fn pair(ell: u64, base: Base, f: &str, h: &str) -> ProblemSpec {
    ProblemSpec::pair(ell, base, poly(f, base), poly(h, base))
}

fn linear_product(n: i64) -> String {
    (1..=n).map(|i| format!("(x - {i})")).collect::<Vec<_>>().join("*")
}

#[test]
fn validate_examples() {
    let k = Base::Cyclotomic(3);
    let report = validate_problem(&pair(3, k, "x^5 - x - 1", "x^5 - 1")).unwrap();
    assert!(report.f.is_irreducible());
    assert!(!report.h.as_ref().unwrap().is_irreducible());
    assert!(report.checks.iter().all(|c| c.status != Status::Fail));

    let err = validate_problem(&pair(3, Base::Rationals, "x^9 - 2", "x^9 - 1")).unwrap_err();
    assert!(matches!(err, Error::Hypothesis(_)));
    let err = validate_problem(&pair(3, Base::Rationals, "(x-1)^2*(x^3+2)", "x^5 - 1")).unwrap_err();
    assert!(matches!(err, Error::Input(_)));
    let err = validate_problem(&pair(3, Base::Rationals, "x^4 - 2", "x^4 - 1")).unwrap_err();
    assert!(matches!(err, Error::Hypothesis(_)));
    let err = validate_problem(&pair(3, Base::Rationals, "x^5 - 2", "x^3 - 1")).unwrap_err();
    assert!(matches!(err, Error::Input(_)));
    let err = validate_problem(&pair(9, Base::Rationals, "x^5 - 2", "x^5 - 1")).unwrap_err();
    assert!(matches!(err, Error::Input(_)));
    // Base must be Q or Q(zeta_l).
    let err = validate_problem(&pair(3, Base::Cyclotomic(5), "x^7 - 2", "x^7 - 1")).unwrap_err();
    assert!(matches!(err, Error::Input(_)));
}

#[test]
fn endo_h_example_upgrades_to_unconditional() {
    let cert = analyze(&pair(3, Base::Cyclotomic(3), "x^5 - x - 1", "x^5 - 1"), false).unwrap();
    let v = &cert.verdict;
    assert_eq!(v.theorem, Theorem::EndoH);
    assert_eq!((v.r, v.dim_bound), (Some(5), Some(8)));
    assert_eq!(v.conclusion, Conclusion::UnconditionalNotIsogenous);
    assert_eq!(v.rules_fired.len(), 1);
    assert_eq!(v.rules_fired[0].name, "ENDO_SNAN");
    assert_eq!(v.rules_fired[0].data["torsion_unit_order"], 6);
    assert!(!contains_root_of_unity(5, 3));
    assert!(v.conditional_statement.is_some());
    // 2 dim J = (n - 1)(l - 1).
    assert_eq!(v.dim_bound, Some((5 - 1) * (3 - 1)));
}

#[test]
fn knowledge_rule_preconditions() {
    // Base Q: stays conditional.
    let cert = analyze(&pair(3, Base::Rationals, "x^5 - x - 1", "x^5 - 1"), false).unwrap();
    assert_eq!(cert.verdict.theorem, Theorem::EndoH);
    assert_eq!(cert.verdict.conclusion, Conclusion::Conditional);
    // n = 3 is below the range of the external result.
    let cert = analyze(&pair(5, Base::Cyclotomic(5), "x^3 - 2", "x^3 - x"), false).unwrap();
    assert_eq!(cert.verdict.theorem, Theorem::EndoH);
    assert_eq!((cert.verdict.r, cert.verdict.dim_bound), (Some(3), Some(8)));
    assert_eq!(cert.verdict.conclusion, Conclusion::Conditional);
    // Strict mode disables the rule.
    let cert = analyze(&pair(3, Base::Cyclotomic(3), "x^5 - x - 1", "x^5 - 1"), true).unwrap();
    assert_eq!(cert.verdict.conclusion, Conclusion::Conditional);
    assert!(cert.verdict.rules_fired.is_empty());
}

#[test]
fn endo_h2_for_composite_n() {
    let base = Base::Cyclotomic(7);
    let cert = analyze(&pair(7, base, "x^15 - 2", &linear_product(15)), false).unwrap();
    let v = &cert.verdict;
    assert_eq!(v.theorem, Theorem::EndoH2);
    assert_eq!(v.candidate_r, vec![3, 5]);
    assert_eq!((v.r, v.dim_bound), (Some(3), Some(12)));
    assert_eq!(v.conclusion, Conclusion::Conditional);
}

#[test]
fn none_when_both_irreducible() {
    let cert = analyze(&pair(3, Base::Rationals, "x^5 - x - 1", "x^5 - 2"), false).unwrap();
    assert_eq!(cert.verdict.theorem, Theorem::None);
    assert_eq!(cert.verdict.conclusion, Conclusion::None);
    assert_eq!(cert.verdict.reason.as_deref(), Some(NO_THEOREM_REASON));
}

#[test]
fn double_prime_and_orientation() {
    let cyclic = "x^5 + x^4 - 4*x^3 - 3*x^2 + 3*x + 1";
    let cert = analyze(&pair(3, Base::Rationals, "x^5 - x - 1", cyclic), false).unwrap();
    assert_eq!(cert.verdict.theorem, Theorem::DoublePrime);
    assert_eq!((cert.verdict.r, cert.verdict.dim_bound), (Some(5), Some(8)));
    let swapped = analyze(&pair(3, Base::Rationals, cyclic, "x^5 - x - 1"), false).unwrap();
    assert_eq!(swapped.verdict.theorem, Theorem::DoublePrime);
    assert_eq!(swapped.verdict.irreducible_side.as_deref(), Some("h"));

    let swapped = analyze(&pair(3, Base::Cyclotomic(3), "x^5 - 1", "x^5 - x - 1"), false).unwrap();
    assert_eq!(swapped.verdict.theorem, Theorem::EndoH);
    assert_eq!(swapped.verdict.irreducible_side.as_deref(), Some("h"));
    assert_eq!(swapped.verdict.conclusion, Conclusion::UnconditionalNotIsogenous);
}

#[test]
fn isog_ell_in_abstract_mode() {
    let base = Base::Rationals;
    let spec = ProblemSpec {
        ell: 5,
        base,
        f: poly("x^9 - 2", base),
        counterpart: Counterpart::AbstractVariety { order_prime_to_n: true },
    };
    let cert = analyze(&spec, false).unwrap();
    assert_eq!(cert.verdict.theorem, Theorem::IsogEll);
    assert_eq!((cert.verdict.r, cert.verdict.dim_bound), (Some(3), Some(8)));
    assert_eq!(cert.problem.mode, "ABSTRACT");
    let spec = ProblemSpec { counterpart: Counterpart::AbstractVariety { order_prime_to_n: false }, ..spec };
    assert_eq!(analyze(&spec, false).unwrap().verdict.theorem, Theorem::None);
}

#[test]
fn certificate_contents() {
    let cert = analyze(&pair(3, Base::Rationals, "x^5 - x - 1", "x^5 - 1"), false).unwrap();
    let names: Vec<&str> = cert.hypotheses.iter().map(|h| h.name.as_str()).collect();
    assert!(names.contains(&"n=5 prime"));
    let f_irr = cert.hypotheses.iter().find(|h| h.name == "f irreducible").unwrap();
    assert_eq!(f_irr.method, "Zassenhaus");
    assert!(names.contains(&"h reducible (factor degrees 1,4)"));
    // Every hypothesis the theorem uses is present.
    for used in &cert.verdict.hypotheses_used {
        assert!(names.contains(&used.as_str()), "{used}");
    }
    assert!(cert.verdict.hypotheses_used.iter().any(|u| u == "f irreducible"));

    let json = serde_json::to_value(&cert).unwrap();
    let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
    for k in ["version", "problem", "hypotheses", "verdict", "timing_ms"] {
        assert!(keys.iter().any(|x| *x == k));
    }
    assert_eq!(json["verdict"]["theorem"], "ENDO_H");
    assert_eq!(json["verdict"]["conclusion"], "CONDITIONAL");
    assert_eq!(json["problem"]["base"], "Q");

    let unc = analyze(&pair(3, Base::Cyclotomic(3), "x^5 - x - 1", "x^5 - 1"), false).unwrap();
    let json = serde_json::to_value(&unc).unwrap();
    assert_eq!(json["verdict"]["rules_fired"][0]["name"], "ENDO_SNAN");
    assert!(!json["verdict"]["rules_fired"][0]["citation"].as_str().unwrap().is_empty());
}

#[test]
fn analysis_is_deterministic() {
    let spec = pair(3, Base::Cyclotomic(3), "x^5 - x - 1", "x^5 - 1");
    let a = serde_json::to_string(&analyze(&spec, false).unwrap()).unwrap();
    let b = serde_json::to_string(&analyze(&spec, false).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn obstruction_examples() {
    let c5 = catalog_group(5, "C5").unwrap();
    let trivial = PermutationGroup::trivial(5).unwrap();
    assert_eq!(obstruction_prime_existence(&c5, &trivial, 5).unwrap(), Some(5));
    let s5 = catalog_group(5, "S5").unwrap();
    let a5 = catalog_group(5, "A5").unwrap();
    assert_eq!(obstruction_prime_existence(&s5, &a5, 5).unwrap(), None);

    let agl = catalog_group(7, "AGL(1,7)").unwrap();
    assert_eq!(agl.order(), 42);
    let normals = normal_subgroups(&agl).unwrap();
    let f21 = normals.iter().find(|h| h.order() == 21).unwrap();
    assert_eq!(obstruction_prime_existence(&agl, f21, 7).unwrap(), None);
    let one = PermutationGroup::trivial(7).unwrap();
    assert_eq!(obstruction_prime_existence(&agl, &one, 7).unwrap(), Some(7));

    // A non-normal subgroup is rejected.
    let s5_sub = s5.subgroup(&[superell::permgrp::Perm::from_cycles(5, &[&[1, 2]]).unwrap()]).unwrap();
    assert!(matches!(obstruction_prime_existence(&s5, &s5_sub, 5), Err(Error::Input(_))));
}

#[test]
fn obstruction_prime_sweep() {
    for n in [3usize, 5, 7] {
        for c in transitive_catalog(n).unwrap() {
            let g: &Arc<PermutationGroup> = &c.group;
            for h in normal_subgroups(g).unwrap() {
                let r = obstruction_prime_existence(g, &h, n).unwrap();
                assert_eq!(r.is_some(), !h.is_transitive(), "{} |H|={}", c.name, h.order());
                if let Some(r) = r {
                    let index = (g.order() / h.order()) as u64;
                    assert!(is_prime(r));
                    assert_eq!(n as u64 % r, 0);
                    assert_eq!(index % r, 0);
                    assert!(gcd(n as u64, index) > 1);
                }
            }
        }
    }
}

const EXTRA: [Property; 7] = [
    Property::Irreducible,
    Property::Transitive,
    Property::TwoTransitive,
    Property::ContainsAn,
    Property::CyclicOrderN,
    Property::OrderPrimeToN,
    Property::OrderDivides(1),
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn selection_is_monotone(which in 0usize..4, f_mask in 0u8..128, h_mask in 0u8..128) {
        let cases = [
            pair(3, Base::Cyclotomic(3), "x^5 - x - 1", "x^5 - 1"),
            pair(3, Base::Rationals, "x^5 - x - 1", "x^5 + x^4 - 4*x^3 - 3*x^2 + 3*x + 1"),
            pair(5, Base::Rationals, "x^3 - 2", "x^3 - x"),
            pair(3, Base::Rationals, "x^5 - x - 1", "x^5 - 2"),
        ];
        let report = validate_problem(&cases[which]).unwrap();
        let before = select_theorem(&report);
        let mut richer = report.clone();
        for (i, p) in EXTRA.iter().enumerate() {
            if f_mask & (1 << i) != 0 {
                richer.f.properties.insert(*p);
            }
            if h_mask & (1 << i) != 0 {
                richer.h.as_mut().unwrap().properties.insert(*p);
            }
        }
        let after = select_theorem(&richer);
        if before.theorem != Theorem::None {
            prop_assert_ne!(after.theorem, Theorem::None);
        }
        // Selection is deterministic.
        prop_assert_eq!(select_theorem(&richer), after.clone());
        for v in [&before, &after] {
            if let (Some(r), Some(b)) = (v.r, v.dim_bound) {
                prop_assert_eq!(b, (report.ell - 1) * (r - 1));
            }
        }
        let upgraded = apply_knowledge_rules(after.clone(), &richer, false);
        if upgraded.conclusion == Conclusion::UnconditionalNotIsogenous {
            prop_assert_eq!(upgraded.rules_fired.len(), 1);
            prop_assert!(upgraded.conditional_statement.is_some());
            prop_assert!(after.conclusion == Conclusion::Conditional);
        }
        let _ = build_certificate(&richer, upgraded, 0);
    }
}
