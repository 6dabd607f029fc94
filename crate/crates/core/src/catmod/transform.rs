use std::sync::Arc;

use crate::artin::{MatrixR, RingElem};
use crate::linalg::MatrixK;

use super::{ModuleError, RepModule};

/// A morphism `f: M → N`: per-vertex matrices `f_x` of shape `r'_x × r_x`
/// with `f_y · M(a) = N(a) · f_x` for every arrow `a: x → y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransform {
    source: Arc<RepModule>,
    target: Arc<RepModule>,
    components: Vec<MatrixR>,
}

impl NatTransform {
    /// Checks shapes and naturality.
    pub fn new(source: Arc<RepModule>, target: Arc<RepModule>, components: Vec<MatrixR>) -> Result<Self, ModuleError> {
        let f = Self::shaped(source, target, components)?;
        if let Some(arrow) = f.naturality_defect() {
            return Err(ModuleError::NotNatural { arrow });
        }
        Ok(f)
    }

    /// Checks shapes only; naturality is asserted in debug builds.
    pub fn unchecked(
        source: Arc<RepModule>,
        target: Arc<RepModule>,
        components: Vec<MatrixR>,
    ) -> Result<Self, ModuleError> {
        let f = Self::shaped(source, target, components)?;
        debug_assert!(f.naturality_defect().is_none(), "assembled transform is not natural");
        Ok(f)
    }

    fn shaped(source: Arc<RepModule>, target: Arc<RepModule>, components: Vec<MatrixR>) -> Result<Self, ModuleError> {
        if !source.same_shape_context(&target) {
            return Err(ModuleError::ContextMismatch);
        }
        if components.len() != source.ranks().len() {
            return Err(ModuleError::ShapeMismatch("one component per vertex expected".into()));
        }
        for (x, c) in components.iter().enumerate() {
            if c.shape() != (target.rank(x), source.rank(x)) {
                return Err(ModuleError::ShapeMismatch(format!(
                    "component at vertex {x} is {}x{}, expected {}x{}",
                    c.rows(),
                    c.cols(),
                    target.rank(x),
                    source.rank(x)
                )));
            }
        }
        Ok(NatTransform {
            source,
            target,
            components,
        })
    }

    pub fn zero(source: Arc<RepModule>, target: Arc<RepModule>) -> Self {
        let alg = source.algebra().clone();
        let components = (0..source.ranks().len())
            .map(|x| MatrixR::zeros(&alg, target.rank(x), source.rank(x)))
            .collect();
        NatTransform {
            source,
            target,
            components,
        }
    }

    pub fn identity(module: Arc<RepModule>) -> Self {
        let alg = module.algebra().clone();
        let components = module.ranks().iter().map(|&r| MatrixR::identity(&alg, r)).collect();
        NatTransform {
            source: module.clone(),
            target: module,
            components,
        }
    }

    /// The first arrow where naturality fails, if any.
    pub fn naturality_defect(&self) -> Option<usize> {
        let alg = self.source.algebra();
        self.source.quiver().arrows().iter().enumerate().find_map(|(ai, a)| {
            let lhs = self.components[a.target].mul(alg, self.source.map(ai));
            let rhs = self.target.map(ai).mul(alg, &self.components[a.source]);
            (lhs != rhs).then_some(ai)
        })
    }

    pub fn source(&self) -> &Arc<RepModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RepModule> {
        &self.target
    }

    pub fn components(&self) -> &[MatrixR] {
        &self.components
    }

    pub fn component(&self, x: usize) -> &MatrixR {
        &self.components[x]
    }

    pub fn is_endomorphism(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target) || self.source == self.target
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_endomorphism() && self.components.iter().all(|c| c.is_identity())
    }

    /// `self ∘ f`
    pub fn compose(&self, f: &NatTransform) -> Result<NatTransform, ModuleError> {
        if f.target != self.source {
            return Err(ModuleError::ShapeMismatch(
                "composition of non-composable transforms".into(),
            ));
        }
        let alg = self.source.algebra();
        let components = self
            .components
            .iter()
            .zip(&f.components)
            .map(|(g, f)| g.mul(alg, f))
            .collect();
        Self::unchecked(f.source.clone(), self.target.clone(), components)
    }

    pub fn add(&self, other: &NatTransform) -> Result<NatTransform, ModuleError> {
        self.check_parallel(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect();
        Self::unchecked(self.source.clone(), self.target.clone(), components)
    }

    pub fn sub(&self, other: &NatTransform) -> Result<NatTransform, ModuleError> {
        self.check_parallel(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.sub(b))
            .collect();
        Self::unchecked(self.source.clone(), self.target.clone(), components)
    }

    fn check_parallel(&self, other: &NatTransform) -> Result<(), ModuleError> {
        if self.source != other.source || self.target != other.target {
            return Err(ModuleError::ShapeMismatch("transforms are not parallel".into()));
        }
        Ok(())
    }

    /// `r · f`; with `f = id` this is the scalar endomorphism `μ_r`.
    pub fn scalar_action(&self, r: &RingElem) -> NatTransform {
        let alg = self.source.algebra();
        let components = self.components.iter().map(|c| c.scale(alg, r)).collect();
        Self::unchecked(self.source.clone(), self.target.clone(), components).expect("scaling preserves shapes")
    }

    pub fn scale_k(&self, c: crate::linalg::FieldElem) -> NatTransform {
        NatTransform {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(|m| m.scale_k(c)).collect(),
        }
    }

    /// Every component invertible over `R`.
    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(|c| c.is_invertible())
    }

    /// Block diagonal k-matrix of the action on the underlying k-space
    /// `⊕_x R^{r_x}`.
    pub fn total_k_matrix(&self) -> MatrixK {
        let alg = self.source.algebra();
        let blocks: Vec<MatrixK> = self.components.iter().map(|c| c.k_matrix(alg)).collect();
        let refs: Vec<&MatrixK> = blocks.iter().collect();
        MatrixK::block_diag(alg.field(), &refs)
    }

    /// All coordinates in a fixed order: vertex, row, column, basis index.
    pub fn flatten(&self) -> Vec<crate::linalg::FieldElem> {
        let n = self.source.algebra().dim();
        let mut out = Vec::new();
        for c in &self.components {
            for i in 0..c.rows() {
                for j in 0..c.cols() {
                    for s in 0..n {
                        out.push(c.layer(s).get(i, j));
                    }
                }
            }
        }
        out
    }

    /// Swaps in different (equal-valued) module handles.
    pub fn rebind(&self, source: Arc<RepModule>, target: Arc<RepModule>) -> NatTransform {
        assert!(*source == *self.source && *target == *self.target);
        NatTransform {
            source,
            target,
            components: self.components.clone(),
        }
    }
}

/// An `R`-linear transform `g: M → V` into a module over `k` regarded as an
/// `R`-module on which `m` acts as zero. Such a map factors through the
/// residue, so `g_x` is stored as a k-matrix applied to `k ⊗_R M(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueTransform {
    source: Arc<RepModule>,
    target: Arc<RepModule>,
    components: Vec<MatrixK>,
}

impl ResidueTransform {
    pub fn new(source: Arc<RepModule>, target: Arc<RepModule>, components: Vec<MatrixK>) -> Result<Self, ModuleError> {
        if !target.algebra().is_field() || source.quiver() != target.quiver() {
            return Err(ModuleError::ContextMismatch);
        }
        for (x, c) in components.iter().enumerate() {
            if c.shape() != (target.rank(x), source.rank(x)) {
                return Err(ModuleError::ShapeMismatch(format!("residue component at vertex {x}")));
            }
        }
        let g = ResidueTransform {
            source,
            target,
            components,
        };
        if let Some(arrow) = g.naturality_defect() {
            return Err(ModuleError::NotNatural { arrow });
        }
        Ok(g)
    }

    pub fn naturality_defect(&self) -> Option<usize> {
        self.source.quiver().arrows().iter().enumerate().find_map(|(ai, a)| {
            let lhs = self.components[a.target].mul(&self.source.map(ai).residue());
            let rhs = self.target.map(ai).residue().mul(&self.components[a.source]);
            (lhs != rhs).then_some(ai)
        })
    }

    pub fn source(&self) -> &Arc<RepModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RepModule> {
        &self.target
    }

    pub fn components(&self) -> &[MatrixK] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// The component as a k-linear map on the full k-space `R^{r_x}`
    /// (dimension `r_x · ℓ(R)`): zero on every `b_s`-coordinate with `s ≥ 1`.
    pub fn full_k_matrix(&self, x: usize) -> MatrixK {
        let n = self.source.algebra().dim();
        let g = &self.components[x];
        MatrixK::from_fn(g.field(), g.rows(), g.cols() * n, |i, col| {
            if col % n == 0 {
                g.get(i, col / n)
            } else {
                g.field().zero()
            }
        })
    }
}
