use num_rational::BigRational;
use proptest::prelude::*;
use superell::cyclo::{contains_root_of_unity, cyclotomic_poly, CyclotomicField};
use superell::error::Error;
use superell::exactmath::{rat, Field, Poly, QPoly, Rationals};
use superell::factor::{
    eisenstein_irreducible, factor_over_cyclotomic, factor_over_rationals,
    factor_rational_over_cyclotomic, is_squarefree, transfer_irreducibility, Transfer,
};

fn q(c: &[i64]) -> QPoly {
    Poly::from_i64s(Rationals, c)
}

#[test]
fn squarefree_examples() {
    assert!(is_squarefree(&q(&[-1, 0, 0, 0, 0, 1])).unwrap());
    let rep = q(&[-1, 1]).pow(2).mul(&q(&[2, 1]));
    assert!(!is_squarefree(&rep).unwrap());
    assert!(is_squarefree(&q(&[-1, -1, 0, 0, 0, 1])).unwrap());
    assert!(matches!(is_squarefree(&q(&[])), Err(Error::Input(_))));
}

#[test]
fn x5_minus_1_over_q() {
    let f = q(&[-1, 0, 0, 0, 0, 1]);
    let fac = factor_over_rationals(&f).unwrap();
    let polys: Vec<_> = fac.factors.iter().map(|(p, m)| (p.clone(), *m)).collect();
    assert_eq!(polys, vec![(q(&[-1, 1]), 1), (q(&[1, 1, 1, 1, 1]), 1)]);
    assert_eq!(fac.product(), f);
}

#[test]
fn x5_minus_x_minus_1_irreducible() {
    let fac = factor_over_rationals(&q(&[-1, -1, 0, 0, 0, 1])).unwrap();
    assert!(fac.is_irreducible());
}

#[test]
fn x4_minus_1_three_factors() {
    let fac = factor_over_rationals(&q(&[-1, 0, 0, 0, 1])).unwrap();
    let polys: Vec<_> = fac.factors.iter().map(|(p, _)| p.clone()).collect();
    assert_eq!(polys, vec![q(&[-1, 1]), q(&[1, 1]), q(&[1, 0, 1])]);
}

#[test]
fn degree_zero_rejected() {
    assert!(matches!(factor_over_rationals(&q(&[3])), Err(Error::Input(_))));
}

#[test]
fn eisenstein_examples() {
    assert!(eisenstein_irreducible(&q(&[-2, 0, 0, 0, 0, 1]), 2).unwrap());
    assert!(!eisenstein_irreducible(&q(&[-1, 0, 0, 0, 0, 1]), 2).unwrap());
    assert!(eisenstein_irreducible(&q(&[3, 9, 0, 1]), 3).unwrap());
    let half = Poly::new(Rationals, vec![BigRational::new(1.into(), 2.into()), rat(1)]);
    assert!(matches!(eisenstein_irreducible(&half, 2), Err(Error::Input(_))));
}

#[test]
fn transfer_examples() {
    assert_eq!(transfer_irreducibility(5, 2), Transfer::Transfers);
    assert_eq!(transfer_irreducibility(3, 6), Transfer::Unknown);
    assert_eq!(transfer_irreducibility(7, 4), Transfer::Transfers);
}

#[test]
fn cyclotomic_x5_minus_1_over_zeta3() {
    let fac = factor_rational_over_cyclotomic(&q(&[-1, 0, 0, 0, 0, 1]), 3).unwrap();
    assert_eq!(fac.degrees(), vec![4, 1]);
    // Containment oracle: zeta_5 is not in Q(zeta_3), so Phi_5 cannot split.
    assert!(!contains_root_of_unity(5, 3));
}

#[test]
fn cyclotomic_x3_minus_1_splits() {
    let k = CyclotomicField::new(3).unwrap();
    let fac = factor_rational_over_cyclotomic(&q(&[-1, 0, 0, 1]), 3).unwrap();
    assert_eq!(fac.degrees(), vec![1, 1, 1]);
    // Roots must be exactly 1, zeta, zeta^2.
    let mut roots: Vec<_> = fac.factors.iter().map(|(p, _)| k.neg(&p.coeff(0))).collect();
    let mut expected = vec![k.one(), k.zeta(), k.zeta_pow(2)];
    let key = |e: &superell::cyclo::CycloElement| format!("{:?}", e.coords());
    roots.sort_by_key(key);
    expected.sort_by_key(key);
    assert_eq!(roots, expected);
}

#[test]
fn x5_minus_2_over_zeta3_both_paths() {
    let f = q(&[-2, 0, 0, 0, 0, 1]);
    let fac = factor_rational_over_cyclotomic(&f, 3).unwrap();
    assert!(fac.is_irreducible());
    // Run the norm method directly, bypassing the shortcuts.
    let k = CyclotomicField::new(3).unwrap();
    let lifted = f.map(k.clone(), |c| k.embed(c));
    let direct = superell::factor::trager_factor(&lifted).unwrap();
    assert_eq!(direct.len(), 1);
}

#[test]
fn trager_on_non_rational_input() {
    // (x - zeta)(x^2 + 2) over Q(zeta_5)
    let k = CyclotomicField::new(5).unwrap();
    let a = Poly::new(k.clone(), vec![k.neg(&k.zeta()), k.one()]);
    let b = q(&[2, 0, 1]).map(k.clone(), |c| k.embed(c));
    let f = a.mul(&b);
    let fac = factor_over_cyclotomic(&f, 5).unwrap();
    assert_eq!(fac.degrees(), vec![2, 1]);
    assert_eq!(fac.product(), f);
}

#[test]
fn cyclotomic_guard_and_field_checks() {
    // Phi_13 has degree 12, shares a factor with 6 and is not Eisenstein, so the
    // norm method is needed and 12 * 6 exceeds the guard.
    let phi = cyclotomic_poly(13).unwrap();
    let err = factor_rational_over_cyclotomic(&phi, 7).unwrap_err();
    assert!(matches!(err, Error::InternalLimit(_)));
    assert!(matches!(factor_rational_over_cyclotomic(&q(&[1, 0, 1]), 9), Err(Error::Input(_))));
    let rep = q(&[-1, 1]).pow(2);
    assert!(matches!(factor_rational_over_cyclotomic(&rep, 3), Err(Error::Input(_))));
}

#[test]
fn cyclotomic_polynomials_split_when_roots_present() {
    // Phi_m over Q(zeta_l) splits into phi(m)/[Q(zeta_l, zeta_m) : Q(zeta_l)] factors.
    // Oracle: for coprime l, m the degree stays phi(m); for m = l it splits fully.
    let phi5 = cyclotomic_poly(5).unwrap();
    let fac = factor_rational_over_cyclotomic(&phi5, 5).unwrap();
    assert_eq!(fac.degrees(), vec![1, 1, 1, 1]);
    let phi4 = cyclotomic_poly(4).unwrap();
    assert!(factor_rational_over_cyclotomic(&phi4, 3).unwrap().is_irreducible());
}

fn irreducible_pool() -> Vec<QPoly> {
    vec![
        q(&[-1, 1]),
        q(&[3, 1]),
        q(&[1, 0, 1]),
        q(&[-2, 0, 1]),
        q(&[1, 1, 1]),
        q(&[-2, 0, 0, 1]),
        q(&[1, -1, 0, 1]),
        q(&[1, 0, -10, 0, 1]),
        q(&[-1, -1, 0, 0, 1]),
        q(&[2, 0, 0, 0, 1]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recovers_constructed_products(idx in prop::collection::vec(0usize..10, 1..=3), unit in 1i64..7) {
        let pool = irreducible_pool();
        let mut expected: Vec<(QPoly, usize)> = Vec::new();
        let mut f = q(&[unit]);
        for &i in &idx {
            let p = pool[i].clone();
            f = f.mul(&p);
            match expected.iter_mut().find(|(e, _)| *e == p) {
                Some(entry) => entry.1 += 1,
                None => expected.push((p, 1)),
            }
        }
        let fac = factor_over_rationals(&f).unwrap();
        prop_assert_eq!(fac.product(), f);
        let mut got = fac.factors.clone();
        let key = |(p, m): &(QPoly, usize)| format!("{:?}{}", p.coeffs(), m);
        got.sort_by_key(key);
        expected.sort_by_key(key);
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn eisenstein_implies_single_factor(n in 2usize..8, a in 1i64..4, b in -3i64..4) {
        // x^n + 2a x + 2(2b+1) is Eisenstein at 2
        let mut c = vec![0i64; n + 1];
        c[0] = 2 * (2 * b + 1);
        c[1] = 2 * a;
        c[n] = 1;
        let f = q(&c);
        prop_assert!(eisenstein_irreducible(&f, 2).unwrap());
        prop_assert!(factor_over_rationals(&f).unwrap().is_irreducible());
    }
}
