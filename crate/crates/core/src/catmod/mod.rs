//! Quivers with relations, modules over them with free values over `R`,
//! natural transformations, `Hom` spaces and lifts.

mod hom;
mod lift;
mod module;
mod quiver;
pub mod standard;
mod transform;

use thiserror::Error;

use crate::artin::AlgebraError;

pub use hom::{hom_basis, hom_to_residue_target, HomSpace};
pub use lift::{trivial_lift, validate_lift, LiftWitness};
pub use module::{direct_sum, RepModule};
pub use quiver::{Arrow, Path, QuiverPresentation, Relation};
pub use transform::{NatTransform, ResidueTransform};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("path not composable: {0}")]
    NotComposable(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("modules live over different algebras or quivers")]
    ContextMismatch,
    #[error("relation {relation} evaluates to a nonzero matrix {value:?}")]
    RelationViolated { relation: usize, value: Vec<Vec<Vec<i64>>> },
    #[error("transform is not natural at arrow {arrow}")]
    NotNatural { arrow: usize },
    #[error("phi is not invertible at vertex {vertex}")]
    PhiNotInvertible { vertex: usize },
    #[error("phi is not natural at arrow {arrow}")]
    PhiNotNatural { arrow: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[cfg(test)]
pub(crate) mod fixtures_for_tests {
    use super::standard;
    use super::RepModule;
    use crate::linalg::PrimeField;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    pub fn s1_and_p1(p: u64) -> (RepModule, RepModule) {
        (standard::loop_simple(k(p)), standard::loop_projective(k(p)))
    }

    pub fn v_ex(p: u64) -> RepModule {
        standard::two_bar_example(k(p))
    }

    pub fn interval(p: u64, n: usize, b: usize, d: usize) -> RepModule {
        standard::interval(k(p), n, b, d)
    }
}
