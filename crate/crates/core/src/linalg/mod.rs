//! Exact linear algebra over prime fields.

mod field;
mod matrix;
mod poly;

pub use field::{FieldElem, PrimeField, MAX_PRIME};
pub use matrix::{MatrixK, Rref};
pub use poly::{factor_poly, minimal_polynomial, PolyK, FACTOR_CANDIDATE_BUDGET};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not a prime in [2, 2^31 - 1]")]
    NotPrime(u64),
    #[error("cannot factor {0}: expected a monic polynomial of degree >= 1")]
    NotFactorable(String),
    #[error("factoring a degree {degree} polynomial over F_{modulus} exceeds the trial-division budget")]
    FactorBudget { degree: usize, modulus: u64 },
}

/// The linear system is inconsistent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("linear system has no solution")]
pub struct NoSolution;
