//! Exact-arithmetic computation of r-Whitney number triangles and bivariate
//! r-Dowling polynomials, together with a machine-checked catalog of the
//! identities these objects satisfy (Spivey-type recurrences, generating
//! functions, explicit formulas, inversion pairs, convexity).
//!
//! Everything is computed over arbitrary-precision rationals; identity
//! verification is exact equality, never a floating-point tolerance.

pub mod comb;
pub mod dowling;
pub mod hyper;
pub mod identities;
pub mod partitions;
pub mod poly;
pub mod rational;
pub mod series;
pub mod whitney;

pub use rational::{format_rat, parse_rat, Rat};
pub use whitney::{WhitneyParams, WhitneyTable};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter m must be nonzero")]
    ZeroModulus,
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("{0} must be a nonnegative integer, got {1}")]
    NotNatural(&'static str, String),
    #[error("enumeration guard exceeded: n + r = {0} > {1}")]
    OracleGuard(u32, u32),
    #[error("parameters outside the verified domain: {0}")]
    Domain(String),
    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
    #[error("bad grid config: {0}")]
    BadConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
