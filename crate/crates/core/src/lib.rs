//! Exact computation of Macdonald polynomials of type A via affine Hecke
//! raising and lowering operators, with machine verification of the operator
//! identities behind them.
//!
//! Everything is exact: coefficients live in Q(q, t) represented as reduced
//! fractions of integer polynomials, so every comparison in the library and
//! in the verification suites is structural equality, never numeric.

pub mod hecke;
pub mod kernel;
pub mod kostka;
pub mod macdonald;
pub mod partitions;
pub mod polyx;
pub mod qt;
pub mod report;
pub mod symfunc;

use thiserror::Error as ThisError;

/// Unified error type for the whole crate.
#[derive(ThisError, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("specialization hits a pole of the reduced fraction")]
    PoleAtSpecialization,
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
    #[error("input is not symmetric in the required variables")]
    NotSymmetric,
    #[error("operator needs at least {needed} variables, got {got}")]
    TooFewVariables { needed: usize, got: usize },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("eigenvalue collision while solving triangular system: {0}")]
    EigenvalueCollision(String),
    #[error("dimension mismatch: {0}")]
    SizeMismatch(String),
    #[error("value expected to be a polynomial with nonnegative powers: {0}")]
    IntegralityViolation(String),
    #[error("independent computations disagree: {0}")]
    CrossCheckMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}
