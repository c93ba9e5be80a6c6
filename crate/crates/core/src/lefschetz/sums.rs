//! Per-point quantities entering the Lefschetz identity.

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::exactnum::{rat, CyclotomicNumber};
use crate::localtypes::{check_prime, LocalType, TypeError};

/// `S_n(P)`: the sum of `k1 k2 k3` over `(k1, k2, k3) in [0, p-1]^3` with
/// `a1 k1 + a2 k2 + a3 k3 = n (mod p)`. Always the brute-force loop.
pub fn s_n(t: &LocalType, n: u32) -> Result<u64, TypeError> {
    if !t.is_isolated() {
        return Err(TypeError::NotIsolated(*t));
    }
    let p = t.p() as u64;
    let [a1, a2, a3] = t.exps().map(u64::from);
    let n = n as u64 % p;
    let mut total = 0u64;
    for k1 in 1..p {
        for k2 in 1..p {
            let partial = (a1 * k1 + a2 * k2) % p;
            for k3 in 1..p {
                if (partial + a3 * k3) % p == n {
                    total += k1 * k2 * k3;
                }
            }
        }
    }
    Ok(total)
}

/// All of `S_0(P), ..., S_{p-1}(P)`.
pub fn s_table(t: &LocalType) -> Result<Vec<u64>, TypeError> {
    (0..t.p()).map(|n| s_n(t, n)).collect()
}

/// `sum_n S_n(P)`, which is `(p (p-1) / 2)^3` for every isolated type.
pub fn sum_all_s(t: &LocalType) -> Result<u64, TypeError> {
    Ok(s_table(t)?.into_iter().sum())
}

/// `(p (p-1) / 2)^3 = p^3 (p-1)^3 / 8`.
pub fn cube_of_triangular(p: u64) -> u64 {
    (p * (p - 1) / 2).pow(3)
}

/// `(p/2) [p^2 (p-1)^2 / 4 - p (p-1)(2p-1) / 6]`: the value of `S_0` at any
/// terminal point of order p.
pub fn s0_terminal_closed_form(p: u64) -> Result<BigRational, TypeError> {
    check_prime(p)?;
    let p = p as i64;
    let bracket = rat(p * p * (p - 1) * (p - 1), 4) - rat(p * (p - 1) * (2 * p - 1), 6);
    Ok(rat(p, 2) * bracket)
}

/// `1 / det(I - d_P g) = 1 / prod_i (1 - zeta_p^{a_i})` in Q(zeta_p).
pub fn contribution(t: &LocalType) -> Result<CyclotomicNumber, TypeError> {
    if !t.is_isolated() {
        return Err(TypeError::NotIsolated(*t));
    }
    let p = t.p() as u64;
    let one = CyclotomicNumber::one(p).expect("p > 0");
    let det = t.exps().iter().fold(one.clone(), |acc, &a| {
        let factor = &one - &CyclotomicNumber::root(p, a as i64).expect("p > 0");
        &acc * &factor
    });
    Ok(det
        .inv()
        .expect("no eigenvalue equals 1 at an isolated point"))
}

/// A prime admitting a terminal quotient with fixed points, and the forced
/// number of fixed points `q = 24 p / (p^2 - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissiblePrime {
    pub p: u64,
    pub q: u64,
}

pub fn admissible_primes(p_max: u64) -> Vec<AdmissiblePrime> {
    (2..=p_max)
        .filter(|&p| crate::exactnum::is_prime(p))
        .filter_map(|p| {
            let den = p * p - 1;
            (24 * p % den == 0).then(|| AdmissiblePrime { p, q: 24 * p / den })
        })
        .filter(|a| a.q > 0)
        .collect()
}

/// `-(1/p) sum_{k=1}^{p-1} k zeta^{k a}`, the expansion of `1/(1 - zeta^a)`
/// used to turn the identity into coefficient equations.
pub fn inverse_one_minus_root_expansion(p: u64, a: i64) -> CyclotomicNumber {
    let scale = -(BigRational::one() / BigRational::from_integer(p.into()));
    CyclotomicNumber::from_power_sum(p, (1..p as i64).map(|k| (k * a, rat(k, 1) * &scale)))
        .expect("p > 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_int;

    fn t(p: u64, e: [i64; 3]) -> LocalType {
        LocalType::new(p, e).unwrap()
    }

    #[test]
    fn s0_examples() {
        assert_eq!(s_n(&t(3, [1, 1, 2]), 0).unwrap(), 6);
        assert_eq!(s_n(&t(2, [1, 1, 1]), 0).unwrap(), 0);
        assert_eq!(s_n(&t(5, [4, 1, 1]), 0).unwrap(), 175);
        assert_eq!(s_n(&t(3, [1, 1, 1]), 0).unwrap(), 9);
        assert!(s_n(&t(3, [1, 1, 0]), 0).is_err());
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(s0_terminal_closed_form(5).unwrap(), rat_int(175));
        assert_eq!(s0_terminal_closed_form(3).unwrap(), rat_int(6));
        assert_eq!(s0_terminal_closed_form(2).unwrap(), rat_int(0));
        assert!(s0_terminal_closed_form(6).is_err());
    }

    #[test]
    fn sums_of_all_s() {
        assert_eq!(sum_all_s(&t(2, [1, 1, 1])).unwrap(), 1);
        for ty in crate::localtypes::enumerate_isolated_types(3).unwrap() {
            assert_eq!(sum_all_s(&ty).unwrap(), 27);
        }
        for ty in crate::localtypes::enumerate_isolated_types(5).unwrap() {
            assert_eq!(sum_all_s(&ty).unwrap(), 1000);
        }
    }

    #[test]
    fn contributions() {
        let c = contribution(&t(2, [1, 1, 1])).unwrap();
        assert_eq!(c.as_rational(), Some(rat(1, 8)));
        let c = contribution(&t(3, [1, 1, 2])).unwrap();
        assert_eq!(c.coeffs(), &[rat(2, 9), rat(1, 9)]);
        let c = contribution(&t(3, [1, 1, 1])).unwrap();
        assert_eq!(c.coeffs(), &[rat(1, 9), rat(2, 9)]);
        assert!(contribution(&t(3, [1, 0, 2])).is_err());
    }

    #[test]
    fn s_coefficients_reassemble_the_contribution() {
        // 1/det(I - dg) = -(1/p^3) sum_n S_n omega^n
        for p in [3u64, 5, 7] {
            for ty in crate::localtypes::enumerate_isolated_types(p).unwrap() {
                let table = s_table(&ty).unwrap();
                let p3 = (p * p * p) as i64;
                let via_s = CyclotomicNumber::from_power_sum(
                    p,
                    table
                        .iter()
                        .enumerate()
                        .map(|(n, &s)| (n as i64, rat(-(s as i64), p3))),
                )
                .unwrap();
                assert_eq!(via_s, contribution(&ty).unwrap(), "{ty}");
            }
        }
    }

    #[test]
    fn admissible() {
        let ps = |m| {
            admissible_primes(m)
                .into_iter()
                .map(|a| (a.p, a.q))
                .collect::<Vec<_>>()
        };
        assert_eq!(ps(5), vec![(2, 16), (3, 9), (5, 5)]);
        assert_eq!(ps(1000), vec![(2, 16), (3, 9), (5, 5)]);
        assert_eq!(ps(2), vec![(2, 16)]);
        assert!(ps(1).is_empty());
        for a in admissible_primes(100) {
            assert_eq!(a.q * (a.p * a.p - 1), 24 * a.p);
        }
    }
}
