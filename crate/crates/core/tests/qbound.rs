use proptest::prelude::*;
use superell::cyclo::cyclotomic_poly;
use superell::error::Error;
use superell::exactmath::{Matrix, Rationals};
use superell::qbound::{
    analyze_commuting_pair, b_trivial_block, synthesize_instance, tensor_dimension,
    tensor_dimension_cross_check, CommutingPair,
};

#[test]
fn synthetic_three_five() {
    let p = synthesize_instance(3, 5).unwrap();
    assert_eq!(p.dim(), 8);
    let rep = analyze_commuting_pair(&p).unwrap();
    assert_eq!(rep.minpoly_a, cyclotomic_poly(3).unwrap());
    assert_eq!(rep.minpoly_b, cyclotomic_poly(5).unwrap());
    assert!(rep.minpolys_cyclotomic);
    assert_eq!((rep.v0_dimension, rep.bound), (8, 8));
    assert!(rep.satisfied);
    assert!(rep.splitting_exact);
    assert!(rep.kernel_basis.is_empty());
}

#[test]
fn synthetic_dimensions_and_orders() {
    for (ell, r, d) in [(3u64, 5u64, 8usize), (5, 3, 8), (3, 7, 12), (5, 7, 24), (3, 11, 20)] {
        let p = synthesize_instance(ell, r).unwrap();
        assert_eq!(p.dim(), d);
        // Orders by repeated multiplication: A has order exactly l, B exactly r.
        let mut acc = p.a().clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.mul(p.a()).unwrap();
            k += 1;
        }
        assert_eq!(k, ell);
        assert!(!p.b().is_identity() && p.b().pow(r).unwrap().is_identity());
        assert!(analyze_commuting_pair(&p).unwrap().minpolys_cyclotomic);
    }
    // Swapping l and r swaps the roles of A and B.
    let p = synthesize_instance(5, 3).unwrap();
    let rep = analyze_commuting_pair(&p).unwrap();
    assert_eq!(rep.minpoly_a, cyclotomic_poly(5).unwrap());
    assert_eq!(rep.minpoly_b, cyclotomic_poly(3).unwrap());
}

#[test]
fn synthesis_rejects_bad_input() {
    assert!(matches!(synthesize_instance(3, 3), Err(Error::Input(_))));
    assert!(matches!(synthesize_instance(2, 3), Err(Error::Input(_))));
    assert!(matches!(synthesize_instance(3, 9), Err(Error::Input(_))));
    assert!(matches!(synthesize_instance(7, 13), Err(Error::InternalLimit(_))));
}

#[test]
fn direct_sum_of_two_instances() {
    let p = synthesize_instance(3, 5).unwrap();
    let s = p.direct_sum(&p).unwrap();
    let rep = analyze_commuting_pair(&s).unwrap();
    assert_eq!(rep.v0_dimension, 16);
    assert_eq!(rep.v0_dimension % 8, 0);
    // Rank oracle: B - 1 is invertible on both blocks.
    let id = Matrix::identity(Rationals, 16);
    assert_eq!(s.b().sub(&id).unwrap().rank(), 16);
}

#[test]
fn hypothesis_failures() {
    let p = synthesize_instance(3, 5).unwrap();
    let id = Matrix::identity(Rationals, 8);
    let b_one = CommutingPair::new(3, 5, p.a().clone(), id.clone()).unwrap();
    let err = analyze_commuting_pair(&b_one).unwrap_err();
    assert!(matches!(&err, Error::Precondition(m) if m.contains("B")));
    let a_one = CommutingPair::new(3, 5, id, p.b().clone()).unwrap();
    let err = analyze_commuting_pair(&a_one).unwrap_err();
    assert!(matches!(&err, Error::Precondition(m) if m.contains("A - 1")));
    // Noncommuting or wrong-order matrices are rejected at construction.
    assert!(CommutingPair::new(3, 5, p.b().clone(), p.b().clone()).is_err());
}

#[test]
fn tensor_dimension_examples() {
    assert_eq!(tensor_dimension(3, 5).unwrap(), 8);
    assert_eq!(tensor_dimension(3, 7).unwrap(), 12);
    assert_eq!(tensor_dimension(5, 7).unwrap(), 24);
    for (ell, r) in [(3u64, 5u64), (3, 7), (5, 3), (5, 7), (7, 3), (7, 5)] {
        assert!(tensor_dimension_cross_check(ell, r).unwrap(), "{ell} {r}");
    }
    assert!(tensor_dimension(5, 5).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn block_sums_keep_divisibility(
        (ell, r) in prop::sample::select(vec![(3u64, 5u64), (5, 3), (3, 7)]),
        full in 1usize..3,
        trivial in 0usize..3,
    ) {
        let inst = synthesize_instance(ell, r).unwrap();
        let triv = b_trivial_block(ell, r).unwrap();
        let mut pair = inst.clone();
        for _ in 1..full {
            pair = pair.direct_sum(&inst).unwrap();
        }
        for _ in 0..trivial {
            pair = pair.direct_sum(&triv).unwrap();
        }
        let rep = analyze_commuting_pair(&pair).unwrap();
        let bound = tensor_dimension(ell, r).unwrap() as usize;
        prop_assert_eq!(rep.v0_dimension, full * bound);
        prop_assert_eq!(rep.kernel_basis.len(), trivial * (ell as usize - 1));
        prop_assert!(rep.satisfied);
        prop_assert!(rep.splitting_exact);
        prop_assert!(rep.minpolys_cyclotomic);
    }
}
