//! Exact and numerical tools for low-degree algebraic roots of random integer
//! polynomials and characteristic polynomials of random matrices.

pub mod algebra;
pub mod algebraic;
pub mod bounds;
pub mod cli;
pub mod control;
pub mod ensembles;
pub mod experiments;
pub mod roots;
