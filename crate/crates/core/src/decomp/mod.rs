//! Splitting modules into indecomposables, endomorphism-ring certificates,
//! scalar recovery for lifts, and the lift decomposition check.

mod decompose;
mod end;
mod residue;
mod split;
mod theorem;

use thiserror::Error;

use crate::artin::AlgebraError;
use crate::catmod::ModuleError;

pub use decompose::{decompose, Certificate, Decomposition, RANDOM_SPLIT_ATTEMPTS};
pub use end::{end_algebra, end_is_scalar, EndAlgebra};
pub use residue::{end_as_scalars, express_as_scalar, factor_through_projection, precompose_projection};
pub use split::{fitting_split, minpoly_split, Split, Summand};
pub use theorem::{find_isomorphism, match_summands, verify_theorem, DecompositionReport, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the module is zero")]
    ZeroModule,
    #[error("expected an endomorphism of the given module")]
    NotEndomorphism,
    #[error("the base module has an endomorphism algebra of dimension {end_dim}, not 1")]
    HypothesisViolated { end_dim: usize },
    #[error("endomorphism is not scalar: {0}")]
    NotScalar(String),
    #[error("no partner found for lift summand {summand}")]
    NoMatch { summand: usize },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
