//! Local Artinian `k`-algebras presented by structure constants.

mod algebra;
mod extension;
mod matrix;

pub use algebra::{ArtinAlgebra, RingElem};
pub use extension::{extension_chain, small_extension, SmallExtension};
pub use matrix::MatrixR;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("b_0 is not a two-sided unit (fails on b_{index})")]
    NotUnital { index: usize },
    #[error("multiplication is not commutative: b_{i} b_{j} != b_{j} b_{i}")]
    NotCommutative { i: usize, j: usize },
    #[error("multiplication is not associative on (b_{i}, b_{j}, b_{l})")]
    NotAssociative { i: usize, j: usize, l: usize },
    #[error("span(b_1, ...) is not nilpotent: m^{exponent} contains {witness:?}")]
    MaxIdealNotNilpotent { exponent: usize, witness: Vec<u32> },
    #[error("span(b_1, ...) is not an ideal: b_{i} b_{j} has a nonzero b_0 coefficient")]
    MaxIdealNotClosed { i: usize, j: usize },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("matrix is not invertible (residue rank {residue_rank})")]
    NotInvertible { residue_rank: usize },
    #[error("R = k has no small extension")]
    LengthOne,
}
