//! Exact classification of isolated fixed points of prime-order
//! automorphisms of Calabi-Yau threefolds.
//!
//! - [`exactnum`]: rationals and cyclotomic fields Q(zeta_n).
//! - [`localtypes`]: linearized fixed points and their singularity predicates.
//! - [`lefschetz`]: the holomorphic Lefschetz identity, the S_n sums and an
//!   exhaustive solver for admissible fixed-point configurations.
//! - [`ambient`]: monomial automorphisms of products of projective spaces,
//!   their fixed loci and invariant sections.
//! - [`pipeline`]: the bundled worked examples, run end to end.

pub mod ambient;
pub mod exactnum;
pub mod lefschetz;
pub mod localtypes;
pub mod par;
pub mod pipeline;

pub use exactnum::{BigRational, CyclotomicNumber};
pub use lefschetz::{ConfigReport, FixedConfig};
pub use localtypes::{LocalType, SingularityClassification};
pub use par::Execution;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] exactnum::ExactError),
    #[error(transparent)]
    Type(#[from] localtypes::TypeError),
    #[error(transparent)]
    Config(#[from] lefschetz::ConfigError),
    #[error(transparent)]
    Ambient(#[from] ambient::AmbientError),
    #[error(transparent)]
    Pipeline(#[from] pipeline::PipelineError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
