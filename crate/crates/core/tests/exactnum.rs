use cyquot_core::exactnum::{rat, CyclotomicNumber};
use num_complex::Complex64;
use proptest::prelude::*;

const ORDERS: [u64; 6] = [1, 3, 4, 5, 8, 12];

fn arb_element() -> impl Strategy<Value = CyclotomicNumber> {
    (
        0..ORDERS.len(),
        prop::collection::vec((-20i64..20, 1i64..6), 0..12),
    )
        .prop_map(|(i, terms)| {
            let n = ORDERS[i];
            let terms = terms
                .into_iter()
                .enumerate()
                .map(|(k, (a, b))| (k as i64, rat(a, b)));
            CyclotomicNumber::from_power_sum(n, terms).unwrap()
        })
}

fn same_order() -> impl Strategy<Value = (CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
    (arb_element(), arb_element(), arb_element()).prop_map(|(a, b, c)| {
        let l = [a.order(), b.order(), c.order()]
            .iter()
            .fold(1, |acc, &m| acc * m / num_integer::gcd(acc, m));
        let up = |x: CyclotomicNumber| x.lift(l / x.order()).unwrap();
        (up(a), up(b), up(c))
    })
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-6 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in same_order()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&(&(&a + &b) - &b) - &a).is_zero());
    }

    #[test]
    fn inverse_is_exact(a in arb_element()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert_eq!(&a * &inv, CyclotomicNumber::one(a.order()).unwrap());
    }

    #[test]
    fn embedding_is_a_homomorphism((a, b, _) in same_order()) {
        prop_assert!(close((&a * &b).to_complex(), a.to_complex() * b.to_complex()));
        prop_assert!(close((&a + &b).to_complex(), a.to_complex() + b.to_complex()));
        prop_assert!(close(a.conj().to_complex(), a.to_complex().conj()));
    }

    #[test]
    fn galois_respects_products((a, b, _) in same_order(), k in 1i64..40) {
        prop_assume!(num_integer::gcd(k, a.order() as i64) == 1);
        prop_assert_eq!((&a * &b).galois(k).unwrap(), &a.galois(k).unwrap() * &b.galois(k).unwrap());
    }

    #[test]
    fn lift_preserves_value(a in arb_element(), m in 1u64..4) {
        let lifted = a.lift(m).unwrap();
        prop_assert_eq!(lifted.order(), a.order() * m);
        prop_assert!(close(lifted.to_complex(), a.to_complex()));
        prop_assert_eq!(lifted.as_rational(), a.as_rational());
    }

    #[test]
    fn json_round_trip(a in arb_element()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<CyclotomicNumber>(&s).unwrap(), a);
    }
}
