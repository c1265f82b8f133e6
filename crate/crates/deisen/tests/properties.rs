//! Randomized property tests: ring axioms of the symbol ring, series
//! calculus rules, and reconstruction robustness.

use num_bigint::BigInt;
use proptest::prelude::*;

use deisen::lfunc::{denominator_bound, reconstruct_rat};
use deisen::qseries::QSeries;
use deisen::rat::Rat;
use deisen::zetapoly::{Gen, ZetaPoly};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

fn generator() -> impl Strategy<Value = Gen> {
    prop_oneof![
        Just(Gen::Z(3)),
        Just(Gen::Z(5)),
        Just(Gen::Z(7)),
        Just(Gen::D(3, 9)),
        Just(Gen::D(5, 7)),
        Just(Gen::D(1, 11)),
    ]
}

fn poly() -> impl Strategy<Value = ZetaPoly> {
    proptest::collection::vec((small_rat(), proptest::option::of(generator())), 0..4).prop_map(
        |terms| {
            let mut acc = ZetaPoly::zero();
            for (c, g) in terms {
                let t = match g {
                    Some(g) => ZetaPoly::generator(g).scale(&c),
                    None => ZetaPoly::from_rat(c),
                };
                acc = &acc + &t;
            }
            acc
        },
    )
}

fn series(order: usize) -> impl Strategy<Value = QSeries> {
    proptest::collection::vec(small_rat(), order + 1).prop_map(move |cs| {
        let mut s = QSeries::zero(order);
        for (n, c) in cs.into_iter().enumerate() {
            s.set_coeff(n, ZetaPoly::from_rat(c));
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_addition_commutes(a in poly(), b in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn poly_addition_associates(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn poly_multiplication_commutes(a in poly(), b in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn poly_multiplication_associates(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn poly_distributes(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn poly_identities(a in poly()) {
        prop_assert_eq!(&a * &ZetaPoly::one(), a.clone());
        prop_assert_eq!(&a + &ZetaPoly::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn series_product_commutes(f in series(6), g in series(6)) {
        prop_assert!(f.mul(&g).agrees_with(&g.mul(&f)));
    }

    #[test]
    fn series_leibniz_rule(f in series(6), g in series(6)) {
        // (fg)' = f'g + fg'
        let lhs = f.mul(&g).q_derivative();
        let rhs = f.q_derivative().mul(&g).add(&f.mul(&g.q_derivative()));
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn series_add_sub_roundtrip(f in series(6), g in series(6)) {
        prop_assert!(f.add(&g).sub(&g).agrees_with(&f));
    }

    #[test]
    fn reconstruction_recovers_small_rationals(
        n in -100_000i64..=100_000,
        d in 1i64..=100_000,
        noise in -9i64..=9,
    ) {
        // perturb p/q by about 1e-45 and reconstruct it exactly
        let target = Rat::new(BigInt::from(n), BigInt::from(d));
        let eps = Rat::new(BigInt::from(noise), BigInt::from(10).pow(45));
        let approx = &target + &eps;
        let bound = denominator_bound();
        let thr = Rat::new(BigInt::from(1), BigInt::from(10).pow(30));
        let (got, resid) = reconstruct_rat(&approx, &bound, &thr).expect("reconstructible");
        prop_assert_eq!(got, target);
        prop_assert!(resid < thr);
    }
}
