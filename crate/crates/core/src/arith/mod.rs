//! Exact scalar, polynomial and matrix arithmetic.
//!
//! Everything here is exact: rationals are arbitrary precision and prime-field
//! arithmetic is modular. There are no tolerances anywhere in the crate.

mod matrix;
mod poly;
mod scalar;

pub use matrix::{clear_denominators, Echelon, Matrix};
pub use poly::{var_list, Monomial, MultiPoly, TermOrder, VarList};
pub use scalar::{is_prime, Field, Scalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("matrix is not square")]
    NonSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix rows have different lengths")]
    Ragged,
    #[error("incompatible matrix shapes")]
    ShapeMismatch,
    #[error("lead term of the zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse {0:?}")]
    Parse(String),
}
