//! Exact integer polynomial and matrix arithmetic.

mod matrix;
mod poly;

pub use matrix::IntMatrix;
pub(crate) use matrix::{mul_mod, pow_mod};
pub use poly::{cauchy_root_bound, IntPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("divisor must be monic")]
    NonMonicDivisor,
    #[error("polynomial must be monic")]
    NonMonic,
    #[error("polynomial must have degree at least 1")]
    DegreeTooSmall,
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("matrix of dimension {n} needs {} entries, got {len}", n * n)]
    NotSquare { n: usize, len: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}
