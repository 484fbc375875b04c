use proptest::prelude::*;

use chowring::classes::{self, c_context, AmbientRingSpec, FactorRelation};
use chowring::combinatorics::Partition;
use chowring::localization::{self, TARGET_VAR};
use chowring::membership::{self, DEFAULT_SLICE_BOUND};
use chowring::{Integers, Polynomial};

fn push(n: usize, parts: &[u32], e: &[u32]) -> Polynomial {
    let mu = Partition::new(parts.to_vec()).unwrap();
    let d = parts.iter().sum();
    localization::pushforward_product_map(n, d, &mu, e).unwrap().polynomial
}

fn three_factor_spec(order: &[usize]) -> AmbientRingSpec {
    let factors = [
        FactorRelation::forms(3, 1, "x").unwrap(),
        FactorRelation::forms(3, 2, "y").unwrap(),
        FactorRelation::standard(3, "z").unwrap(),
    ];
    AmbientRingSpec::new(3, order.iter().map(|&i| factors[i].clone()).collect())
}

prop_compose! {
    fn class_in_xyz()(terms in prop::collection::vec((prop::collection::vec(0u32..7, 3), 0u32..3, -9i64..9), 1..5)) -> Polynomial {
        let ctx = c_context(&["x", "y", "z"], 3);
        let mut out = Polynomial::zero(&ctx, Integers);
        for (xyz, c1, coeff) in terms {
            let e = vec![xyz[0], xyz[1], xyz[2], c1, 0, 0];
            out = &out + &Polynomial::monomial(&ctx, Integers, e, coeff.into()).unwrap();
        }
        out
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn psi_is_idempotent_and_order_free(p in class_in_xyz(), order in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let spec = three_factor_spec(&[0, 1, 2]);
        let once = spec.splitting_psi(&p).unwrap();
        prop_assert_eq!(spec.splitting_psi(&once).unwrap(), once.clone());
        let other = three_factor_spec(&order).splitting_psi(&p).unwrap();
        prop_assert_eq!(other.to_context(once.context()).unwrap(), once.clone());
        prop_assert!(once.degree_in("x").unwrap() < chowring::Degree::Finite(3));
        prop_assert!(once.degree_in("y").unwrap() < chowring::Degree::Finite(6));
        prop_assert!(once.degree_in("z").unwrap() < chowring::Degree::Finite(3));
    }

    /// Permuting exponents among equal parts does not change the pushforward.
    #[test]
    fn pushforward_is_invariant_under_equal_parts(e in prop::collection::vec(0u32..3, 2), swap in any::<bool>()) {
        let f = if swap { vec![e[1], e[0]] } else { e.clone() };
        prop_assert_eq!(push(2, &[1, 1], &e), push(2, &[1, 1], &f));
    }

    /// The pullback of `h` is the sum of the factor hyperplane classes.
    /// Classes live in the equivariant ring of the target, so both sides are
    /// compared modulo its relation `P_[3](h)`.
    #[test]
    fn projection_formula(e in prop::collection::vec(0u32..3, 2)) {
        let parts = [1, 2];
        let lhs = &push(2, &parts, &[e[0] + 1, e[1]]) + &push(2, &parts, &[e[0], e[1] + 1]);
        let base = push(2, &parts, &e);
        let h = Polynomial::variable(base.context(), Integers, TARGET_VAR).unwrap();
        let rel = classes::total_relation_c(2, 3, TARGET_VAR).unwrap().to_context(base.context()).unwrap();
        let reduce = |p: &Polynomial| p.reduce_mod_monic(&rel, TARGET_VAR).unwrap().1;
        prop_assert_eq!(reduce(&lhs), reduce(&(&h * &base)));
    }

    /// Any homogeneous combination of the alpha classes is certified as a
    /// member over Z, with cofactors that multiply back.
    #[test]
    fn combinations_of_generators_are_members(coeffs in prop::collection::vec(-20i64..20, 6)) {
        let a = classes::alpha_generators(3, 3, TARGET_VAR).unwrap();
        let ctx = a[0].context().clone();
        let var = |v: &str| Polynomial::variable(&ctx, Integers, v).unwrap();
        // degree-3 target: quadratic * a1 + linear * a2 + constant * a3
        let q1 = &(&var("h") * &var("c1")).scale_int(coeffs[0]) + &var("c2").scale_int(coeffs[1]);
        let q2 = &var("h").scale_int(coeffs[2]) + &var("c1").scale_int(coeffs[3]);
        let q3 = Polynomial::from_int(&ctx, Integers, coeffs[4]);
        let target = &(&(&q1 * &a[0]) + &(&q2 * &a[1])) + &(&q3 * &a[2]);
        prop_assume!(!target.is_zero());
        let cert = membership::slice_membership(&target, &a, DEFAULT_SLICE_BOUND).unwrap();
        prop_assert!(cert.is_member());
        let pairs: Vec<_> = cert.cofactors().unwrap().iter().cloned().zip(a.iter().cloned()).collect();
        prop_assert!(membership::verify_identity(&target, &pairs).unwrap());
    }
}

#[test]
fn single_part_partition_gives_the_unit_class() {
    let mu = Partition::new(vec![3]).unwrap();
    let c = localization::delta_class(3, 3, &mu).unwrap();
    assert!(c.polynomial.is_one());
}

#[test]
fn pushforward_rejects_mismatched_input() {
    let mu = Partition::new(vec![1, 2]).unwrap();
    assert!(localization::pushforward_product_map(3, 4, &mu, &[0, 0]).is_err());
    assert!(localization::pushforward_product_map(3, 3, &mu, &[0]).is_err());
}

#[test]
fn alpha_classes_are_homogeneous_of_their_index() {
    for n in 2..=4 {
        for d in 2..=5 {
            for (i, a) in classes::alpha_generators(n, d, TARGET_VAR).unwrap().iter().enumerate() {
                assert!(a.is_homogeneous(), "n={n} d={d} alpha{}", i + 1);
                assert_eq!(a.weighted_degree().finite(), Some(i as u32 + 1));
            }
        }
    }
}
