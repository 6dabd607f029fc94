use std::sync::Arc;

use crate::artin::ArtinAlgebra;
use crate::linalg::MatrixK;

use super::{ModuleError, RepModule, ResidueTransform};

/// A lift `(M, φ)` of a module `V` over `k`: `M` is over `R` and
/// `φ_x: k ⊗_R M(x) → V(x)` is a natural isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftWitness {
    pub lift: Arc<RepModule>,
    pub base: Arc<RepModule>,
    pub phi: Vec<MatrixK>,
}

impl LiftWitness {
    pub fn new(lift: Arc<RepModule>, base: Arc<RepModule>, phi: Vec<MatrixK>) -> Result<Self, ModuleError> {
        let w = LiftWitness { lift, base, phi };
        validate_lift(&w)?;
        Ok(w)
    }

    /// `π_M = φ ∘ residue: M → V`.
    pub fn projection(&self) -> ResidueTransform {
        ResidueTransform::new(self.lift.clone(), self.base.clone(), self.phi.clone()).expect("validated witness")
    }
}

pub fn validate_lift(w: &LiftWitness) -> Result<(), ModuleError> {
    w.lift.validate()?;
    w.base.validate()?;
    if !w.base.algebra().is_field()
        || w.base.algebra().field() != w.lift.algebra().field()
        || w.base.quiver() != w.lift.quiver()
    {
        return Err(ModuleError::ContextMismatch);
    }
    if w.phi.len() != w.base.ranks().len() {
        return Err(ModuleError::ShapeMismatch("one phi matrix per vertex expected".into()));
    }
    for (x, phi) in w.phi.iter().enumerate() {
        if phi.shape() != (w.base.rank(x), w.lift.rank(x)) {
            return Err(ModuleError::ShapeMismatch(format!("phi at vertex {x}")));
        }
        if !phi.is_invertible() {
            return Err(ModuleError::PhiNotInvertible { vertex: x });
        }
    }
    for (ai, a) in w.lift.quiver().arrows().iter().enumerate() {
        let lhs = w.phi[a.target].mul(&w.lift.map(ai).residue());
        let rhs = w.base.map(ai).residue().mul(&w.phi[a.source]);
        if lhs != rhs {
            return Err(ModuleError::PhiNotNatural { arrow: ai });
        }
    }
    Ok(())
}

/// `R ⊗_k V` with `φ = id`.
pub fn trivial_lift(base: &Arc<RepModule>, algebra: &Arc<ArtinAlgebra>) -> LiftWitness {
    let field = base.algebra().field();
    LiftWitness {
        lift: Arc::new(base.base_extend(algebra)),
        base: base.clone(),
        phi: base.ranks().iter().map(|&r| MatrixK::identity(field, r)).collect(),
    }
}
