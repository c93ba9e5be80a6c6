use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::exactnum::{gcd_u64, lcm_u64, CyclotomicNumber};

/// A root of unity `exp(2 pi i k / n)`, stored as the reduced turn fraction
/// `k/n` in `[0, 1)`. Multiplication of roots is addition of turns.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    num: u64,
    den: u64,
}

impl Root {
    pub const ONE: Root = Root { num: 0, den: 1 };

    /// `exp(2 pi i k / n)`.
    pub fn new(k: i64, n: u64) -> Root {
        assert!(n > 0, "root of unity of order 0");
        let k = k.rem_euclid(n as i64) as u64;
        let g = gcd_u64(k, n).max(1);
        Root {
            num: k / g,
            den: n / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    /// The multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    /// Exponent of this root with respect to `exp(2 pi i / n)`; `n` must be
    /// a multiple of the order.
    pub fn exponent_in(&self, n: u64) -> u64 {
        assert!(
            n.is_multiple_of(self.den),
            "order {} does not divide {n}",
            self.den
        );
        self.num * (n / self.den)
    }

    pub fn pow(self, e: i64) -> Root {
        let n = self.den as i128;
        let k = (self.num as i128 * e as i128).rem_euclid(n);
        Root::new(k as i64, self.den)
    }

    /// The `l` roots `x` with `x^l = self`.
    pub fn nth_roots(self, l: u64) -> Vec<Root> {
        let n = self.den * l;
        (0..l)
            .map(|j| Root::new((self.num + j * self.den) as i64, n))
            .collect()
    }

    pub fn to_cyclotomic(self, n: u64) -> CyclotomicNumber {
        CyclotomicNumber::root(n, self.exponent_in(n) as i64).expect("n > 0")
    }
}

/// Least common multiple of the orders of the given roots.
pub fn common_order<'a>(roots: impl IntoIterator<Item = &'a Root>) -> u64 {
    roots.into_iter().fold(1, |acc, r| lcm_u64(acc, r.den))
}

impl Add for Root {
    type Output = Root;
    fn add(self, o: Root) -> Root {
        let n = lcm_u64(self.den, o.den);
        Root::new((self.exponent_in(n) + o.exponent_in(n)) as i64, n)
    }
}

impl Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root::new(-(self.num as i64), self.den)
    }
}

impl Sub for Root {
    type Output = Root;
    fn sub(self, o: Root) -> Root {
        self + (-o)
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({}/{})", self.num, self.den)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (k, n) => write!(f, "z{n}^{k}"),
        }
    }
}
