use glmn_crystal::qboson::{self, boson_crystal_check};
use glmn_crystal::qfield::{q_binom, q_factorial, q_int, QRat};
use glmn_crystal::verify::boson_grid;
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = QRat> {
    prop::collection::vec((-4i64..5, -6i64..7), 0..4).prop_map(|t| QRat::laurent(&t))
}

fn ratio() -> impl Strategy<Value = QRat> {
    (laurent(), laurent()).prop_map(|(a, b)| if b.is_zero() { a } else { a / b })
}

proptest! {
    #[test]
    fn field_laws(a in ratio(), b in ratio(), c in ratio()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn bar_is_a_ring_involution(a in ratio(), b in ratio()) {
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn text_round_trip(a in ratio()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<QRat>().unwrap(), a);
    }

    #[test]
    fn values_at_q_equal_one(a in 0i64..9, b in 0i64..9) {
        // [a, b] specialises to the ordinary binomial coefficient.
        let v = q_binom(a + b, b).eval_at_one().unwrap();
        let mut want = num_rational::BigRational::from_integer(1.into());
        for k in 1..=b {
            want *= num_rational::BigRational::new((a + k).into(), k.into());
        }
        prop_assert_eq!(v, want);
    }
}

#[test]
fn factorial_and_integers() {
    assert_eq!(q_int(0), QRat::zero());
    assert_eq!(q_int(-3), -q_int(3));
    assert_eq!(
        q_factorial(4),
        &(&(&q_int(1) * &q_int(2)) * &q_int(3)) * &q_int(4)
    );
    assert_eq!(q_int(2), QRat::laurent(&[(1, 1), (1, -1)]));
}

#[test]
fn boson_grid_small() {
    for (name, (bad, count)) in boson_grid(4, 7) {
        assert!(bad.is_empty(), "{name}: {}", bad[0]);
        assert!(count > 0);
    }
}

#[test]
fn boson_tensor_rule() {
    for l in 0..=4 {
        let r = boson_crystal_check(l, 7);
        assert!(
            r.lattice_closed && r.rule_matches && r.kernel_basis,
            "l = {l}: {:?}",
            r.failures
        );
    }
    assert_eq!(qboson::boson_rule(2, 0, 0, false), Some((1, 0)));
}
