//! Linearized fixed points of prime-order automorphisms of threefolds.
//!
//! A fixed point P of g (order p) is recorded by the exponents
//! `(a1, a2, a3)` of the eigenvalues `omega^{ai}` of `d_P g`, with
//! `omega = e^{2 pi i / p}`. Exponents are only defined up to permutation,
//! so they are kept sorted non-increasingly.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{is_prime, rat, rational_json};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("p must be prime (got {0})")]
    NotPrime(u64),
    #[error("exponent {exp} out of range [0, {max}] for p = {p}")]
    ExponentOutOfRange { p: u32, exp: i64, max: u32 },
    #[error("{0} is not an isolated fixed point (some exponent is 0)")]
    NotIsolated(LocalType),
    #[error("{u} is not a unit modulo {p}")]
    NotUnit { u: i64, p: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLocalType")]
pub struct LocalType {
    p: u32,
    exps: [u32; 3],
}

#[derive(Deserialize)]
struct RawLocalType {
    p: u64,
    exps: [i64; 3],
}

impl TryFrom<RawLocalType> for LocalType {
    type Error = TypeError;
    fn try_from(raw: RawLocalType) -> Result<Self, TypeError> {
        LocalType::new(raw.p, raw.exps)
    }
}

impl fmt::Display for LocalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.exps;
        write!(f, "1/{}({a},{b},{c})", self.p)
    }
}

pub(crate) fn check_prime(p: u64) -> Result<u32, TypeError> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(TypeError::NotPrime(p));
    }
    Ok(p as u32)
}

impl LocalType {
    pub fn new(p: u64, exps: [i64; 3]) -> Result<Self, TypeError> {
        let p = check_prime(p)?;
        let mut e = [0u32; 3];
        for (slot, &a) in e.iter_mut().zip(&exps) {
            if a < 0 || a >= p as i64 {
                return Err(TypeError::ExponentOutOfRange {
                    p,
                    exp: a,
                    max: p - 1,
                });
            }
            *slot = a as u32;
        }
        e.sort_unstable_by(|x, y| y.cmp(x));
        Ok(LocalType { p, exps: e })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exps(&self) -> [u32; 3] {
        self.exps
    }

    /// `(a1 + a2 + a3) mod p`; `omega^s` is `det(d_P g)`.
    pub fn s(&self) -> u32 {
        self.exps.iter().sum::<u32>() % self.p
    }

    pub fn is_isolated(&self) -> bool {
        self.exps.iter().all(|&a| a != 0)
    }

    fn require_isolated(&self) -> Result<(), TypeError> {
        if self.is_isolated() {
            Ok(())
        } else {
            Err(TypeError::NotIsolated(*self))
        }
    }

    /// The type of `g^m`: every exponent multiplied by `m` mod p.
    pub fn power(&self, m: i64) -> LocalType {
        let p = self.p as i64;
        let e = self.exps.map(|a| (a as i64 * m).rem_euclid(p));
        LocalType::new(self.p as u64, e).expect("scaled exponents stay in range")
    }

    /// Age of `g` at P with respect to the primitive root `lambda = omega^{u^{-1}}`:
    /// `sum_i ((u a_i) mod p) / p`. Zero exponents contribute 0.
    pub fn age(&self, u: i64) -> Result<BigRational, TypeError> {
        let p = self.p as i64;
        if u.rem_euclid(p) == 0 {
            return Err(TypeError::NotUnit { u, p: self.p });
        }
        let total: i64 = self
            .exps
            .iter()
            .map(|&a| (u * a as i64).rem_euclid(p))
            .sum();
        Ok(rat(total, p))
    }

    fn ages(&self) -> BTreeMap<u32, BigRational> {
        (1..self.p)
            .map(|u| (u, self.age(u as i64).expect("u in 1..p is a unit")))
            .collect()
    }

    /// Exactly one eigenvalue differs from 1.
    pub fn is_quasi_reflection(&self) -> bool {
        self.exps.iter().filter(|&&a| a != 0).count() == 1
    }

    /// `det(d_P g) = 1`. For prime order this covers every power of g.
    pub fn is_gorenstein(&self) -> bool {
        self.s() == 0
    }

    /// Determinant criterion: `det(d_P g)` is one of the eigenvalues.
    pub fn is_terminal(&self) -> Result<bool, TypeError> {
        self.require_isolated()?;
        Ok(self.exps.contains(&self.s()))
    }

    /// Age criterion: age > 1 for every unit u, i.e. for every primitive
    /// root and every non-trivial power of g simultaneously.
    pub fn is_terminal_by_age(&self) -> Result<bool, TypeError> {
        self.require_isolated()?;
        Ok(self.ages().values().all(|a| *a > BigRational::one()))
    }

    pub fn is_canonical(&self) -> Result<bool, TypeError> {
        self.require_isolated()?;
        Ok(self.ages().values().all(|a| *a >= BigRational::one()))
    }

    pub fn classify(&self) -> SingularityClassification {
        let ages = self.ages();
        let one = BigRational::one();
        let is_terminal = ages.values().all(|a| *a > one);
        let is_canonical = ages.values().all(|a| *a >= one);
        if self.is_isolated() {
            assert_eq!(
                self.is_terminal().unwrap(),
                is_terminal,
                "age and determinant criteria disagree on {self}"
            );
        }
        SingularityClassification {
            local_type: *self,
            is_isolated: self.is_isolated(),
            is_quasi_reflection: self.is_quasi_reflection(),
            is_gorenstein: self.is_gorenstein(),
            is_canonical,
            is_terminal,
            s: self.s(),
            ages,
        }
    }
}

/// All singularity flags of one local type.
///
/// For non-isolated types the canonical/terminal flags come from the age
/// criterion alone; they are `false` for quasi-reflections and the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityClassification {
    pub local_type: LocalType,
    pub is_isolated: bool,
    pub is_quasi_reflection: bool,
    pub is_gorenstein: bool,
    pub is_canonical: bool,
    pub is_terminal: bool,
    pub s: u32,
    #[serde(with = "rational_json::map")]
    pub ages: BTreeMap<u32, BigRational>,
}

/// Every isolated type of order p: multisets of exponents from `[1, p-1]`.
/// There are `C(p+1, 3)` of them.
pub fn enumerate_isolated_types(p: u64) -> Result<Vec<LocalType>, TypeError> {
    let p = check_prime(p)?;
    let mut out = Vec::new();
    for a in 1..p {
        for b in 1..=a {
            for c in 1..=b {
                out.push(LocalType { p, exps: [a, b, c] });
            }
        }
    }
    Ok(out)
}

/// The order-5 isolated types split by behaviour of the quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order5Partition {
    /// Terminal (hence non-symplectic) types.
    pub terminal: Vec<LocalType>,
    /// Non-terminal types with `s != 0`.
    pub non_terminal: Vec<LocalType>,
    /// `s = 0`.
    pub symplectic: Vec<LocalType>,
}

pub fn partition_order5() -> Order5Partition {
    let mut part = Order5Partition {
        terminal: vec![],
        non_terminal: vec![],
        symplectic: vec![],
    };
    for t in enumerate_isolated_types(5).expect("5 is prime") {
        if t.is_gorenstein() {
            part.symplectic.push(t);
        } else if t.is_terminal().expect("isolated") {
            part.terminal.push(t);
        } else {
            part.non_terminal.push(t);
        }
    }
    part
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat_int, CyclotomicNumber};
    use proptest::prelude::*;

    fn t(p: u64, e: [i64; 3]) -> LocalType {
        LocalType::new(p, e).unwrap()
    }

    #[test]
    fn construction_canonicalizes() {
        assert_eq!(t(3, [2, 1, 1]).exps(), [2, 1, 1]);
        assert_eq!(t(3, [1, 2, 1]), t(3, [2, 1, 1]));
        assert_eq!(LocalType::new(4, [1, 1, 1]), Err(TypeError::NotPrime(4)));
        assert!(matches!(
            LocalType::new(3, [3, 1, 1]),
            Err(TypeError::ExponentOutOfRange { exp: 3, .. })
        ));
        assert!(LocalType::new(3, [-1, 1, 1]).is_err());
    }

    #[test]
    fn s_values() {
        assert_eq!(t(5, [4, 1, 1]).s(), 1);
        assert_eq!(t(2, [1, 1, 1]).s(), 1);
        assert_eq!(t(3, [1, 1, 1]).s(), 0);
    }

    #[test]
    fn ages() {
        assert_eq!(t(3, [1, 1, 2]).age(1).unwrap(), rat(4, 3));
        assert_eq!(t(3, [1, 1, 1]).age(2).unwrap(), rat_int(2));
        assert_eq!(t(5, [2, 2, 2]).age(3).unwrap(), rat(3, 5));
        assert_eq!(
            t(5, [2, 2, 2]).age(10),
            Err(TypeError::NotUnit { u: 10, p: 5 })
        );
    }

    #[test]
    fn quasi_reflection_and_gorenstein() {
        assert!(t(3, [1, 0, 0]).is_quasi_reflection());
        assert!(!t(3, [1, 1, 2]).is_quasi_reflection());
        assert!(!t(2, [0, 0, 0]).is_quasi_reflection());
        assert!(t(3, [1, 1, 1]).is_gorenstein());
        assert!(!t(5, [4, 1, 1]).is_gorenstein());
        assert!(t(2, [1, 1, 0]).is_gorenstein());
    }

    #[test]
    fn terminal_and_canonical() {
        assert!(t(2, [1, 1, 1]).is_terminal().unwrap());
        assert!(t(3, [1, 1, 2]).is_terminal().unwrap());
        assert!(!t(5, [2, 2, 2]).is_terminal().unwrap());
        assert!(t(2, [1, 1, 1]).is_terminal_by_age().unwrap());
        assert!(t(5, [4, 1, 1]).is_terminal_by_age().unwrap());
        assert!(!t(5, [1, 1, 1]).is_terminal_by_age().unwrap());
        assert!(t(3, [1, 1, 1]).is_canonical().unwrap());
        assert!(!t(5, [2, 2, 2]).is_canonical().unwrap());
        assert!(t(2, [1, 1, 1]).is_canonical().unwrap());
    }

    #[test]
    fn isolation_is_required() {
        let qr = t(3, [1, 0, 0]);
        assert_eq!(qr.is_terminal(), Err(TypeError::NotIsolated(qr)));
        assert!(qr.is_terminal_by_age().is_err());
        assert!(qr.is_canonical().is_err());
    }

    #[test]
    fn classify_records() {
        let c = t(3, [1, 1, 2]).classify();
        assert!(c.is_isolated && !c.is_quasi_reflection && !c.is_gorenstein);
        assert!(c.is_canonical && c.is_terminal);
        assert_eq!(c.s, 1);

        let c = t(3, [1, 1, 1]).classify();
        assert!(c.is_isolated && c.is_gorenstein && c.is_canonical && !c.is_terminal);
        assert_eq!(c.s, 0);

        let c = t(3, [1, 0, 0]).classify();
        assert!(!c.is_isolated && c.is_quasi_reflection);
        assert!(!c.is_terminal && !c.is_canonical);

        // A1 x C: canonical and Gorenstein, not terminal.
        let c = t(2, [1, 1, 0]).classify();
        assert!(c.is_canonical && c.is_gorenstein && !c.is_terminal);
    }

    #[test]
    fn classification_serializes_ages_as_fractions() {
        let s = serde_json::to_string(&t(3, [1, 1, 2]).classify()).unwrap();
        assert!(s.contains(r#""ages":{"1":[4,3],"2":[5,3]}"#), "{s}");
        assert!(s.contains(r#""local_type":{"p":3,"exps":[2,1,1]}"#), "{s}");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_isolated_types(2).unwrap(), vec![t(2, [1, 1, 1])]);
        assert_eq!(
            enumerate_isolated_types(3).unwrap(),
            vec![
                t(3, [1, 1, 1]),
                t(3, [2, 1, 1]),
                t(3, [2, 2, 1]),
                t(3, [2, 2, 2])
            ]
        );
        for p in [2u64, 3, 5, 7, 11, 13] {
            let ts = enumerate_isolated_types(p).unwrap();
            assert_eq!(ts.len() as u64, (p + 1) * p * (p - 1) / 6);
            let mut d = ts.clone();
            d.dedup();
            assert_eq!(d.len(), ts.len());
        }
        assert!(enumerate_isolated_types(9).is_err());
    }

    #[test]
    fn order5_symplectic_part() {
        let part = partition_order5();
        assert_eq!(
            part.symplectic,
            vec![
                t(5, [2, 2, 1]),
                t(5, [3, 1, 1]),
                t(5, [4, 3, 3]),
                t(5, [4, 4, 2])
            ]
        );
        assert_eq!(part.terminal.len(), 8);
        assert_eq!(part.non_terminal.len(), 8);
    }

    #[test]
    fn gorenstein_iff_determinant_is_one() {
        for p in [2u64, 3, 5, 7] {
            for ty in enumerate_isolated_types(p).unwrap() {
                let det = CyclotomicNumber::root(p, ty.s() as i64).unwrap();
                let one = CyclotomicNumber::one(p).unwrap();
                assert_eq!(ty.is_gorenstein(), det == one, "{ty}");
            }
        }
    }

    fn any_isolated() -> impl Strategy<Value = LocalType> {
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]).prop_flat_map(|p| {
            let e = 1..p as i64;
            (Just(p), e.clone(), e.clone(), e).prop_map(|(p, a, b, c)| t(p, [a, b, c]))
        })
    }

    proptest! {
        #[test]
        fn predicates_are_power_invariant(ty in any_isolated(), m in 1i64..13) {
            prop_assume!(m % ty.p() as i64 != 0);
            let g = ty.power(m);
            prop_assert_eq!(g.is_terminal().unwrap(), ty.is_terminal().unwrap());
            prop_assert_eq!(g.is_canonical().unwrap(), ty.is_canonical().unwrap());
            prop_assert_eq!(g.is_gorenstein(), ty.is_gorenstein());
        }

        #[test]
        fn terminal_implies_canonical(ty in any_isolated()) {
            if ty.is_terminal().unwrap() {
                prop_assert!(ty.is_canonical().unwrap());
            }
        }

        #[test]
        fn permutation_invariance(ty in any_isolated()) {
            let [a, b, c] = ty.exps().map(|x| x as i64);
            prop_assert_eq!(LocalType::new(ty.p() as u64, [c, a, b]).unwrap(), ty);
            prop_assert_eq!(LocalType::new(ty.p() as u64, [b, c, a]).unwrap(), ty);
        }
    }
}
