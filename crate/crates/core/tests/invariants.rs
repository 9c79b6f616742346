use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use whitlab::agreement::{gamma, gamma_enum_oracle, gamma_poly};
use whitlab::distributions::{
    alpha_from_whitney, alpha_sequence_enum, beta_from_alpha, whitney_from_alpha, whitney_from_beta,
};
use whitlab::exactmath::{int, interpolate_ints, power_sum, qbinom};
use whitlab::subspaces::{Subspace, Vector};
use whitlab::{AtomSet, Field, RestrictionGeometry, UniPolyQ};

fn small_q() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qbinom_pascal(q in small_q(), r in 1i64..10, s in 1i64..10) {
        prop_assume!(s <= r);
        let qi = BigInt::from(q);
        let lhs = qbinom(r, s, q).unwrap();
        let rhs = qbinom(r - 1, s - 1, q).unwrap() + num_traits::pow(qi, s as usize) * qbinom(r - 1, s, q).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(qbinom(r, s, q).unwrap(), qbinom(r, r - s, q).unwrap());
    }

    #[test]
    fn transforms_invert(q in small_q(), tail in prop::collection::vec(-1000i64..1000, 0..6)) {
        let mut w = vec![BigInt::from(1)];
        w.extend(tail.into_iter().map(BigInt::from));
        let n = w.len() + 1;
        let alpha = alpha_from_whitney(&w, n, q);
        prop_assert_eq!(whitney_from_alpha(&alpha, n, q), w.clone());
        prop_assert_eq!(whitney_from_beta(&beta_from_alpha(&alpha, n, q), n, q), w);
    }

    #[test]
    fn gamma_matches_oracle(a in 1u64..5, b in 1i64..6, c in 0i64..6, nu in 0i64..6) {
        prop_assert_eq!(gamma(a, b, c, nu).unwrap(), gamma_enum_oracle(a, b, c, nu).unwrap());
    }

    #[test]
    fn gamma_poly_matches_large_alphabet(a in 1u64..400, b in 1i64..6, c in 0i64..6, nu in 0i64..6) {
        let p = gamma_poly(b, c, nu).unwrap();
        prop_assert_eq!(p.eval_int(&BigInt::from(a)), int(gamma(a, b, c, nu).unwrap()));
    }

    #[test]
    fn interpolation_recovers_polynomial(roots in prop::collection::vec(-20i64..20, 0..6)) {
        let p = UniPolyQ::from_roots(&roots);
        let pts: Vec<(BigInt, BigInt)> = (0..=roots.len() as i64)
            .map(|x| (BigInt::from(x), p.eval_int(&BigInt::from(x)).to_integer()))
            .collect();
        prop_assert_eq!(interpolate_ints(&pts).unwrap(), p);
    }

    #[test]
    fn power_sums_by_definition(j in 0u32..8, a in 0i64..40) {
        let direct: BigInt = (1..=a).map(|i| num_traits::pow(BigInt::from(i), j as usize)).sum();
        prop_assert_eq!(power_sum(j, &BigInt::from(a)).unwrap(), direct);
    }

    #[test]
    fn random_geometry_routes_agree(q in prop::sample::select(vec![2u64, 3]), mask in any::<u64>()) {
        let f = Field::new(q).unwrap();
        let n = 3;
        let pts = Subspace::full(n).points(&f);
        let chosen: Vec<Vector> = pts.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, p)| p.clone()).collect();
        prop_assume!(!chosen.is_empty());
        let atoms = AtomSet::explicit(&f, n, &chosen).unwrap();
        let g = RestrictionGeometry::build(&f, &atoms).unwrap();
        let w = g.whitney();
        // χ(1) = 0 whenever there is at least one atom
        prop_assert!(w.iter().sum::<BigInt>().is_zero());
        if atoms.span(&f).rank() == n {
            let alpha = alpha_sequence_enum(&f, &atoms).unwrap();
            prop_assert_eq!(whitney_from_alpha(&alpha, n, q), w);
        }
    }
}
