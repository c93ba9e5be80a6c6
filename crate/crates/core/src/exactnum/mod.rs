//! Exact arithmetic: arbitrary-precision rationals and cyclotomic fields.
//!
//! Every equality decision downstream (Lefschetz identities, invariant
//! sections, restrictions to fixed components) is made here, on reduced
//! coefficient vectors. Floating point only appears in
//! [`CyclotomicNumber::to_complex`], which is for display.

mod cyclotomic;
mod poly;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicNumber, CyclotomicPolynomial};
pub use num_rational::BigRational;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("order mismatch: Q(zeta_{left}) vs Q(zeta_{right}); lift explicitly")]
    OrderMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois exponent {k} is not coprime to the order {n}")]
    NotCoprime { k: i64, n: u64 },
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("expected {expected} coefficients for order {order}, got {got}")]
    CoefficientCount {
        order: u64,
        expected: usize,
        got: usize,
    },
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `Some(n)` when the rational is an integer that fits in an `i64`.
pub fn rat_to_i64(r: &BigRational) -> Option<i64> {
    if r.denom().is_one() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// JSON form for big integers: a plain number when it fits in `i64`,
/// otherwise a decimal string. Both forms are accepted on input.
pub(crate) mod bigint_json {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(i64),
        Big(String),
    }

    pub fn to_repr<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match n.to_i64() {
            Some(v) => v.serialize(s),
            None => n.to_string().serialize(s),
        }
    }

    pub fn from_repr<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Small(v) => Ok(BigInt::from(v)),
            Repr::Big(s) => s.parse().map_err(D::Error::custom),
        }
    }
}

/// Serde adapter writing a `BigRational` as `[num, den]`.
pub mod rational_json {
    use super::bigint_json;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Zero;
    use serde::de::Error as _;
    use serde::ser::SerializeTuple;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    struct Out<'a>(&'a BigInt);
    impl Serialize for Out<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            bigint_json::to_repr(self.0, s)
        }
    }

    #[derive(Deserialize)]
    struct In(#[serde(deserialize_with = "bigint_json::from_repr")] BigInt);

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&Out(r.numer()))?;
        t.serialize_element(&Out(r.denom()))?;
        t.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let (In(n), In(den)) = <(In, In)>::deserialize(d)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(BigRational::new(n, den))
    }

    /// Same encoding for a list of rationals.
    pub mod vec {
        use super::*;

        #[derive(Serialize, Deserialize)]
        struct Item(#[serde(with = "super")] BigRational);

        pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|r| Item(r.clone())))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
            Ok(Vec::<Item>::deserialize(d)?
                .into_iter()
                .map(|i| i.0)
                .collect())
        }
    }

    /// And for the values of a map.
    pub mod map {
        use super::*;
        use std::collections::BTreeMap;

        #[derive(Serialize, Deserialize)]
        struct Item(#[serde(with = "super")] BigRational);

        pub fn serialize<S: Serializer>(
            m: &BTreeMap<u32, BigRational>,
            s: S,
        ) -> Result<S::Ok, S::Error> {
            s.collect_map(m.iter().map(|(k, v)| (k, Item(v.clone()))))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<BTreeMap<u32, BigRational>, D::Error> {
            Ok(BTreeMap::<u32, Item>::deserialize(d)?
                .into_iter()
                .map(|(k, v)| (k, v.0))
                .collect())
        }
    }
}

/// Serde adapter for a lone `BigInt`.
pub mod bigint_serde {
    pub use super::bigint_json::from_repr as deserialize;
    pub use super::bigint_json::to_repr as serialize;
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
