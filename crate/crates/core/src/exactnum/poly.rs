//! Dense univariate polynomials over Q, just enough for modular inversion.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients in ascending degree; no trailing zeros (zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct QPoly(pub Vec<BigRational>);

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("lead of zero polynomial")
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        let z = BigRational::zero();
        QPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - other.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.0.clone();
        if self.0.len() < divisor.0.len() {
            return (QPoly(Vec::new()), self.clone());
        }
        let dl = divisor.0.len();
        let mut quot = vec![BigRational::zero(); rem.len() - dl + 1];
        let lead_inv = divisor.lead().recip();
        for shift in (0..quot.len()).rev() {
            let c = &rem[shift + dl - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (k, d) in divisor.0.iter().enumerate() {
                rem[shift + k] -= &c * d;
            }
            quot[shift] = c;
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Inverse of `self` modulo `modulus`, if `gcd(self, modulus) = 1`.
    pub fn inverse_mod(&self, modulus: &QPoly) -> Option<QPoly> {
        // Invariant: s_i * self = r_i (mod modulus).
        let (mut r0, mut r1) = (modulus.clone(), self.div_rem(modulus).1);
        let (mut s0, mut s1) = (QPoly(Vec::new()), QPoly::new(vec![BigRational::one()]));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != 0 {
            return None;
        }
        let scale = r0.lead().recip();
        let inv = QPoly::new(s0.0.into_iter().map(|c| c * &scale).collect());
        Some(inv.div_rem(modulus).1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_int;

    fn p(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&v| rat_int(v)).collect())
    }

    #[test]
    fn division_identity() {
        let a = p(&[-1, 0, 0, 0, 0, 0, 1]);
        let b = p(&[1, 1, 1]);
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn inverse_of_one_minus_x_mod_phi3() {
        let inv = p(&[1, -1]).inverse_mod(&p(&[1, 1, 1])).unwrap();
        // (2 + x) / 3
        assert_eq!(
            inv,
            QPoly::new(vec![crate::exactnum::rat(2, 3), crate::exactnum::rat(1, 3)])
        );
    }

    #[test]
    fn no_inverse_when_sharing_a_factor() {
        // x - 1 divides x^2 - 1
        assert!(p(&[-1, 1]).inverse_mod(&p(&[-1, 0, 1])).is_none());
    }
}
