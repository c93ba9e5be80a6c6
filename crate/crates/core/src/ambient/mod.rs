//! Monomial automorphisms of products of projective spaces.
//!
//! An automorphism is `g = (A_i) o sigma` with each `A_i` a generalized
//! permutation matrix whose entries are roots of unity. Everything here is
//! exact: roots are turn fractions, and sums of roots are evaluated in a
//! cyclotomic field only when sections are evaluated or restricted.

mod automorphism;
mod counting;
mod fixed;
mod group;
mod root;
mod sections;
mod words;

pub use automorphism::{Ambient, MonomialAutomorphism, MonomialMatrix};
pub use counting::{
    burnside_count, burnside_on_fixed_points, component_orbits, fixed_on_y, BurnsideReport,
    ComponentOrbits, FixedOnY,
};
pub use fixed::{
    anticanonical_multidegree, common_fixed_components, fixed_components, fixes_point,
    intersect_curve_divisor, BasisVector, FixedComponent, Piece, SparseVec,
};
pub use group::{generate_group, FiniteActionGroup, DEFAULT_GROUP_CAP};
pub use root::{common_order, Root};
pub use sections::{
    base_point_check, evaluate, invariant_sections, is_fixed_by, monomials, pullback,
    restricts_nonzero_on, InvariantSection, Monomial,
};
pub use words::{parse_relation, Atom, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmbientError {
    #[error("invalid ambient {0:?}: need at least one factor, each of dimension >= 1")]
    InvalidAmbient(Vec<u32>),
    #[error("automorphisms live on different ambient spaces")]
    AmbientMismatch,
    #[error("sigma {0:?} is not a dimension-preserving permutation of the factors")]
    BadPermutation(Vec<usize>),
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("order exceeds cap {cap}")]
    OrderCapExceeded { cap: u64 },
    #[error("group closure exceeds cap {cap}")]
    GroupCapExceeded { cap: usize },
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("multiplication table is not closed")]
    NotClosed,
    #[error("unknown generator '{0}'")]
    UnknownGenerator(char),
    #[error("cannot parse '{input}': {reason}")]
    WordSyntax { input: String, reason: String },
    #[error("multidegree has {got} entries, expected {expected}")]
    DegreeLength { expected: usize, got: usize },
    #[error("component has dimension {dimension}, expected a curve")]
    NotACurve { dimension: u32 },
    #[error("malformed point: {0}")]
    MalformedPoint(String),
    #[error("unsupported component: {0}")]
    UnsupportedComponent(String),
    #[error("elements do not commute")]
    NonCommuting,
    #[error("component is not mapped to a component of the conjugate fixed locus")]
    ComponentNotInvariant,
    #[error("element family is not closed under conjugation")]
    NotConjugationClosed,
    #[error("fix sizes given for {got} elements, group has {expected}")]
    FixSizes { expected: usize, got: usize },
    #[error("average {total}/{order} is not an integer")]
    NonIntegralAverage { total: u64, order: u64 },
    #[error("fixed locus on the hypersurface is not finite")]
    NotIsolatedOnY,
    #[error("fixed sets of distinct focus elements meet on the hypersurface")]
    OverlappingFixedSets,
}
