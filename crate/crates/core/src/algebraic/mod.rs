//! Detection of algebraic roots of low degree: factor searches, cyclotomic
//! machinery and irreducibility certificates.
//!
//! An algebraic root of degree `d` of a monic integer polynomial `f` has a
//! monic integer minimal polynomial of degree `d` dividing `f`, so every
//! question here reduces to exact divisibility by monic candidates.

mod candidates;
mod classify;
mod cyclotomic;
pub mod finite_field;
mod report;
mod search;

pub use candidates::{enumerate_candidates, CandidateBox, CandidateIter, DEFAULT_CEILING};
pub use classify::{
    classify_irreducibility, rademacher_structural_certificate, Effort, CERTIFICATE_PRIMES,
};
pub use cyclotomic::{cyclotomic, cyclotomic_factors, inverse_totient};
pub use finite_field::modp_irreducibility_certificate;
pub use report::{Certificate, Factor, FactorReport, Method, Status};
pub use search::{
    low_degree_factors_enumerate, low_degree_factors_subset, rational_root_factors, subset_count,
    ROUNDING_WINDOW,
};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraicError {
    #[error("enumeration would visit {predicted} candidates, above the ceiling of {ceiling}")]
    CeilingExceeded { predicted: BigInt, ceiling: u64 },
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must have degree at least 1")]
    DegreeTooSmall,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
