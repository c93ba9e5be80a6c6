//! Exhaustive search for fixed-point configurations satisfying the identity.
//!
//! Each candidate type contributes a vector in `Q(zeta_p) = Q^{p-1}`. After
//! clearing a common denominator the problem becomes: find all nonnegative
//! integer vectors `m` with `sum m_j v_j = target` and `sum m_j <= max_points`.
//! The search assigns multiplicities type by type and prunes a branch as soon
//! as some coordinate of the residual leaves the interval reachable with the
//! remaining budget.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::sums::contribution;
use super::{ConfigError, FixedConfig};
use crate::exactnum::CyclotomicNumber;
use crate::localtypes::{check_prime, enumerate_isolated_types, LocalType};
use crate::par::{self, Execution};

pub const DEFAULT_MAX_POINTS: u32 = 64;

/// All configurations of at most `max_points` isolated points of order `p`
/// whose contributions sum to `1 - zeta^r`, in canonical order.
pub fn solve_configs(p: u64, r: i64, max_points: u32) -> Result<Vec<FixedConfig>, ConfigError> {
    solve_configs_with(Execution::default(), p, r, max_points)
}

pub fn solve_configs_with(
    exec: Execution,
    p: u64,
    r: i64,
    max_points: u32,
) -> Result<Vec<FixedConfig>, ConfigError> {
    check_prime(p)?;
    if r < 0 || r >= p as i64 {
        return Err(ConfigError::TraceExponent { r, p });
    }
    let problem = Problem::build(p, r)?;
    let first_choices: Vec<u32> = match problem.types.len() {
        0 => vec![],
        _ => (0..=max_points).collect(),
    };
    let mut found: Vec<Vec<u32>> = if problem.types.is_empty() {
        // No candidate types: only the empty configuration can work.
        if problem.target.iter().all(|&x| x == 0) {
            vec![vec![]]
        } else {
            vec![]
        }
    } else {
        par::map(exec, &first_choices, |&m0| {
            problem.search_from(m0, max_points)
        })
        .into_iter()
        .flatten()
        .collect()
    };
    found.dedup();
    let mut configs = found
        .into_iter()
        .map(|mults| {
            let pts = problem.types.iter().copied().zip(mults);
            FixedConfig::new(p, r, pts)
        })
        .collect::<Result<Vec<_>, _>>()?;
    configs.sort();
    configs.dedup();
    Ok(configs)
}

struct Problem {
    types: Vec<LocalType>,
    vectors: Vec<Vec<i64>>,
    target: Vec<i64>,
    /// `suffix_lo[j][c] = min(0, min_{k >= j} v_k[c])`, likewise `suffix_hi`.
    suffix_lo: Vec<Vec<i64>>,
    suffix_hi: Vec<Vec<i64>>,
}

impl Problem {
    fn build(p: u64, r: i64) -> Result<Problem, ConfigError> {
        let types: Vec<LocalType> = enumerate_isolated_types(p)?
            .into_iter()
            .filter(|t| (t.s() as i64 + r) % p as i64 == 0)
            .collect();
        let contributions: Vec<_> = types
            .iter()
            .map(|t| contribution(t).expect("isolated"))
            .collect();
        let target = &CyclotomicNumber::one(p).expect("p > 0")
            - &CyclotomicNumber::root(p, r).expect("p > 0");

        let mut den = BigInt::one();
        for c in contributions.iter().chain(std::iter::once(&target)) {
            for x in c.coeffs() {
                den = den.lcm(x.denom());
            }
        }
        let to_ints = |c: &CyclotomicNumber| -> Result<Vec<i64>, ConfigError> {
            c.coeffs()
                .iter()
                .map(|x| {
                    (x.numer() * (&den / x.denom()))
                        .to_i64()
                        .ok_or(ConfigError::SearchOverflow)
                })
                .collect()
        };
        let vectors = contributions
            .iter()
            .map(to_ints)
            .collect::<Result<Vec<_>, _>>()?;
        let target = to_ints(&target)?;

        let dim = target.len();
        let n = vectors.len();
        let mut suffix_lo = vec![vec![0i64; dim]; n + 1];
        let mut suffix_hi = vec![vec![0i64; dim]; n + 1];
        for j in (0..n).rev() {
            for c in 0..dim {
                suffix_lo[j][c] = suffix_lo[j + 1][c].min(vectors[j][c]);
                suffix_hi[j][c] = suffix_hi[j + 1][c].max(vectors[j][c]);
            }
        }
        Ok(Problem {
            types,
            vectors,
            target,
            suffix_lo,
            suffix_hi,
        })
    }

    /// All solutions whose first multiplicity is `m0`.
    fn search_from(&self, m0: u32, max_points: u32) -> Vec<Vec<u32>> {
        let mut residual = self.target.clone();
        for (c, x) in residual.iter_mut().enumerate() {
            *x -= m0 as i64 * self.vectors[0][c];
        }
        let mut mults = vec![0u32; self.types.len()];
        mults[0] = m0;
        let mut out = Vec::new();
        self.dfs(1, &mut residual, max_points - m0, &mut mults, &mut out);
        out
    }

    fn feasible(&self, j: usize, residual: &[i64], budget: u32) -> bool {
        let b = budget as i64;
        residual
            .iter()
            .enumerate()
            .all(|(c, &x)| b * self.suffix_lo[j][c] <= x && x <= b * self.suffix_hi[j][c])
    }

    fn dfs(
        &self,
        j: usize,
        residual: &mut [i64],
        budget: u32,
        mults: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if !self.feasible(j, residual, budget) {
            return;
        }
        if j == self.types.len() {
            // Feasibility with an empty suffix means the residual is zero.
            out.push(mults.clone());
            return;
        }
        let v = &self.vectors[j];
        for m in 0..=budget {
            mults[j] = m;
            self.dfs(j + 1, residual, budget - m, mults, out);
            for (x, d) in residual.iter_mut().zip(v) {
                *x -= d;
            }
        }
        for (x, d) in residual.iter_mut().zip(v) {
            *x += (budget as i64 + 1) * d;
        }
        mults[j] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exps(c: &FixedConfig) -> Vec<([u32; 3], u32)> {
        c.points().iter().map(|(t, &m)| (t.exps(), m)).collect()
    }

    #[test]
    fn involutions() {
        let sols = solve_configs(2, 1, 32).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(exps(&sols[0]), vec![([1, 1, 1], 16)]);
        assert!(solve_configs(2, 1, 15).unwrap().is_empty());
        // r = 0 has no isolated candidates at all.
        let sols = solve_configs(2, 0, 20).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols[0].is_empty());
    }

    #[test]
    fn order_three() {
        let sols = solve_configs(3, 2, 30).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(exps(&sols[0]), vec![([2, 1, 1], 9)]);
        let sols = solve_configs(3, 1, 30).unwrap();
        assert_eq!(exps(&sols[0]), vec![([2, 2, 1], 9)]);

        let sols = solve_configs(3, 0, 6).unwrap();
        let got: Vec<_> = sols.iter().map(exps).collect();
        let mut want = vec![vec![]];
        for k in 1..=3 {
            want.push(vec![([1, 1, 1], k), ([2, 2, 2], k)]);
        }
        assert_eq!(got, want);
    }

    #[test]
    fn order_five_contains_the_uniform_mixed_type() {
        let sols = solve_configs(5, 4, 15).unwrap();
        assert_eq!(sols.len(), 20);
        assert!(sols.iter().any(|c| exps(c) == vec![([3, 2, 1], 5)]));
        assert!(!sols.iter().any(|c| exps(c) == vec![([4, 1, 1], 5)]));
        for c in &sols {
            assert!(super::super::verify_config(c).valid, "{c}");
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for (p, r, n) in [(2, 1, 20), (3, 0, 8), (5, 4, 12), (5, 0, 6)] {
            assert_eq!(
                solve_configs_with(Execution::Sequential, p, r, n).unwrap(),
                solve_configs_with(Execution::Parallel, p, r, n).unwrap()
            );
        }
    }

    #[test]
    fn zero_budget() {
        assert_eq!(solve_configs(3, 0, 0).unwrap().len(), 1);
        assert!(solve_configs(3, 1, 0).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(solve_configs(4, 0, 4).is_err());
        assert!(solve_configs(3, 3, 4).is_err());
    }
}
