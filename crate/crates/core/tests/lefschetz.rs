use cyquot_core::exactnum::CyclotomicNumber;
use cyquot_core::lefschetz::{
    conti_check, cube_of_triangular, involution_classify, s_table, solve_configs,
    solve_configs_with, sum_all_s, verify_config, FixDescription, FixedConfig, QuotientKind,
};
use cyquot_core::localtypes::{enumerate_isolated_types, LocalType};
use cyquot_core::Execution;
use proptest::prelude::*;

const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

fn arb_type() -> impl Strategy<Value = LocalType> {
    (0..PRIMES.len(), any::<[u8; 3]>()).prop_map(|(i, raw)| {
        let p = PRIMES[i];
        let e = raw.map(|x| 1 + x as i64 % (p as i64 - 1));
        LocalType::new(p, e).unwrap()
    })
}

proptest! {
    #[test]
    fn s_sums_to_cube_of_triangular(t in arb_type()) {
        prop_assert_eq!(sum_all_s(&t).unwrap(), cube_of_triangular(t.p() as u64));
        prop_assert_eq!(s_table(&t).unwrap().len(), t.p() as usize);
    }

    #[test]
    fn configs_round_trip_through_json(t in arb_type(), m in 1u32..40) {
        let r = (t.p() - t.s() % t.p()) % t.p();
        let c = FixedConfig::new(t.p() as u64, r as i64, [(t, m)]).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        prop_assert_eq!(serde_json::from_str::<FixedConfig>(&text).unwrap(), c.clone());
        let rep = verify_config(&c);
        let again: cyquot_core::ConfigReport = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
        prop_assert_eq!(again, rep);
    }

    #[test]
    fn relabeling_acts_by_galois(t in arb_type(), m in 1u32..10, k in 1i64..11) {
        let p = t.p() as i64;
        prop_assume!(k % p != 0);
        let r = (p - t.s() as i64 % p) % p;
        let c = FixedConfig::new(p as u64, r, [(t, m)]).unwrap();
        let d = c.relabel(k).unwrap();
        prop_assert_eq!(c.lefschetz_sum().galois(k).unwrap(), d.lefschetz_sum());
        prop_assert_eq!(verify_config(&c).valid, verify_config(&d).valid);
    }
}

#[test]
fn identity_needs_every_point() {
    // Dropping a point from a valid configuration breaks the identity.
    let c = FixedConfig::from_exps(3, 2, &[([1, 1, 2], 9)]).unwrap();
    assert!(verify_config(&c).valid);
    let d = FixedConfig::from_exps(3, 2, &[([1, 1, 2], 8)]).unwrap();
    assert!(!verify_config(&d).valid);
    assert!(!conti_check(&d).ok);
}

#[test]
fn lefschetz_target_is_one_minus_root() {
    for c in solve_configs(5, 3, 8).unwrap() {
        let expected = &CyclotomicNumber::one(5).unwrap() - &CyclotomicNumber::root(5, 3).unwrap();
        assert_eq!(c.lefschetz_sum(), expected);
    }
}

#[test]
fn execution_modes_agree() {
    for (p, r, max) in [(2, 1, 40), (3, 0, 10), (5, 2, 12), (7, 1, 6)] {
        assert_eq!(
            solve_configs_with(Execution::Sequential, p, r, max).unwrap(),
            solve_configs_with(Execution::Parallel, p, r, max).unwrap()
        );
    }
}

#[test]
fn types_partition_by_homogeneity() {
    for p in [3u64, 5, 7] {
        let all = enumerate_isolated_types(p).unwrap();
        let mut seen = 0;
        for r in 0..p as u32 {
            seen += all.iter().filter(|t| (t.s() + r) % p as u32 == 0).count();
        }
        assert_eq!(seen, all.len());
    }
}

#[test]
fn involutions() {
    let rec = involution_classify(FixDescription::Isolated(16)).unwrap();
    assert!(!rec.symplectic);
    assert_eq!(rec.quotient, QuotientKind::TerminalIsolated);
    assert!(involution_classify(FixDescription::Isolated(8)).is_err());
    assert_eq!(
        involution_classify(FixDescription::Curve).unwrap().quotient,
        QuotientKind::CanonicalAlongCurve
    );
}
