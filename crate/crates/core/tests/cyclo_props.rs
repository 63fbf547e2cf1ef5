use proptest::prelude::*;
use sympar::cyclo::{parse_literal, Cyclotomic};

fn arb_cyclo() -> impl Strategy<Value = Cyclotomic> {
    let conductor = prop::sample::select(vec![1u32, 3, 4, 5, 7, 8, 9, 12, 15, 20, 24]);
    (conductor, prop::collection::vec((0i64..60, -6i64..7, 1i64..5), 0..5)).prop_map(|(n, terms)| {
        terms.into_iter().fold(Cyclotomic::zero(), |acc, (k, num, den)| {
            let z = Cyclotomic::root_of_unity(n, k).unwrap();
            &acc + &(&z * &Cyclotomic::rational(num, den).unwrap())
        })
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let scale = 1.0 + b.0.abs() + b.1.abs();
    (a.0 - b.0).abs() <= 1e-9 * scale && (a.1 - b.1).abs() <= 1e-9 * scale
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Cyclotomic::zero(), a.clone());
        prop_assert_eq!(&a - &a, Cyclotomic::zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
            prop_assert_eq!(&(&b * &a).div(&a).unwrap(), &b);
        }
    }

    #[test]
    fn conjugation_is_involutive_homomorphism(a in arb_cyclo(), b in arb_cyclo()) {
        prop_assert_eq!(a.complex_conjugate().complex_conjugate(), a.clone());
        prop_assert_eq!((&a * &b).complex_conjugate(), &a.complex_conjugate() * &b.complex_conjugate());
        prop_assert_eq!((&a + &b).complex_conjugate(), &a.complex_conjugate() + &b.complex_conjugate());
    }

    #[test]
    fn numeric_shadow_agrees(a in arb_cyclo(), b in arb_cyclo()) {
        let (fa, fb) = (a.to_complex(), b.to_complex());
        prop_assert!(close((&a * &b).to_complex(), cmul(fa, fb)));
        prop_assert!(close((&a + &b).to_complex(), (fa.0 + fb.0, fa.1 + fb.1)));
        let ca = a.complex_conjugate().to_complex();
        prop_assert!(close(ca, (fa.0, -fa.1)));
    }

    #[test]
    fn literal_round_trip(a in arb_cyclo()) {
        prop_assert_eq!(parse_literal(&a.format_literal()).unwrap(), a);
    }

    #[test]
    fn canonical_form_independent_of_construction(a in arb_cyclo(), b in arb_cyclo()) {
        // (a+b)^2 built two ways
        let lhs = &(&a + &b) * &(&a + &b);
        let rhs = &(&(&a * &a) + (&(&a * &b).scale_i64(2))) + &(&b * &b);
        prop_assert_eq!(&lhs, &rhs);
        // lifting through a larger conductor and back is invisible
        let z60 = Cyclotomic::root_of_unity(60, 7).unwrap();
        let lifted = &(&a + &z60) - &z60;
        prop_assert_eq!(lifted.conductor(), a.conductor());
        prop_assert_eq!(lifted, a);
    }
}

#[test]
fn element_of_q_zeta12_equal_to_i_has_conductor_4() {
    let z = Cyclotomic::zeta(12);
    let built = &(&z * &z) * &z;
    assert_eq!(built.conductor(), 4);
    assert_eq!(built, Cyclotomic::i());
}
