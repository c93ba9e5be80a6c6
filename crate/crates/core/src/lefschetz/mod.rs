//! The holomorphic Lefschetz identity for a prime-order automorphism with
//! isolated fixed points:
//!
//! ```text
//! sum_P 1 / det(I - d_P g) = 1 - zeta^r
//! ```
//!
//! where `zeta^r` is the trace of `g` on `H^{0,3}`.

mod analysis;
mod config;
mod solver;
mod sums;

pub use analysis::{
    involution_classify, order3_analysis, order5_analysis, FixDescription, InvolutionRecord,
    Order3Record, Order5Record, QuotientKind,
};
pub use config::{conti_check, verify_config, ConfigReport, ContiCheck, FixedConfig, PointReport};
pub use solver::{solve_configs, solve_configs_with, DEFAULT_MAX_POINTS};
pub use sums::{
    admissible_primes, contribution, cube_of_triangular, inverse_one_minus_root_expansion,
    s0_terminal_closed_form, s_n, s_table, sum_all_s, AdmissiblePrime,
};

use thiserror::Error;

use crate::localtypes::{LocalType, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("trace exponent r = {r} must lie in [0, {p})")]
    TraceExponent { r: i64, p: u64 },
    #[error("point {found} does not have order {expected}")]
    MixedPrimes { expected: u32, found: LocalType },
    #[error("point {0} is not isolated")]
    NotIsolated(LocalType),
    #[error("point {local_type} has s = {} but r = {r} requires s = -r mod p", local_type.s())]
    Inhomogeneous { local_type: LocalType, r: u32 },
    #[error("an empty fixed locus forces r = 0 (got r = {r})")]
    EmptyWithTrace { r: u32 },
    #[error("expected order {expected}, got {got}")]
    WrongPrime { expected: u32, got: u32 },
    #[error("the order-5 analysis needs r != 0")]
    SymplecticOrder5,
    #[error(
        "{count} isolated fixed points of an involution cannot satisfy the Lefschetz identity"
    )]
    InconsistentInvolution { count: u32 },
    #[error("integer coordinates overflowed during search")]
    SearchOverflow,
}
