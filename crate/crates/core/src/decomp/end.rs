use std::sync::Arc;

use crate::catmod::{hom_basis, HomSpace, RepModule};
use crate::linalg::FieldElem;

use super::DecompError;

/// `End(M)` with its composition table: `basis[i] ∘ basis[j] = Σ_l table[i][j][l] · basis[l]`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub space: HomSpace,
    pub table: Vec<Vec<Vec<FieldElem>>>,
}

impl EndAlgebra {
    pub fn module(&self) -> &Arc<RepModule> {
        self.space.source()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

pub fn end_algebra(m: &Arc<RepModule>) -> Result<EndAlgebra, DecompError> {
    let space = hom_basis(m, m)?;
    let basis = space.basis();
    let mut table = Vec::with_capacity(basis.len());
    for a in basis {
        let mut row = Vec::with_capacity(basis.len());
        for b in basis {
            let prod = a.compose(b)?;
            let coords = space
                .coordinates(&prod)
                .ok_or_else(|| DecompError::Inconsistent("End is not closed under composition".into()))?;
            row.push(coords);
        }
        table.push(row);
    }
    Ok(EndAlgebra { space, table })
}

/// `dim_k End_R(M) = ℓ(R)`. The scalar maps `μ_{b_i}` are independent on any
/// nonzero free module, so equality means every endomorphism is scalar.
pub fn end_is_scalar(m: &Arc<RepModule>) -> Result<bool, DecompError> {
    if m.is_zero() {
        return Err(DecompError::ZeroModule);
    }
    Ok(hom_basis(m, m)?.dim() == m.algebra().length())
}
