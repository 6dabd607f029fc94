use std::sync::Arc;

use crate::artin::{ArtinAlgebra, MatrixR};
use crate::linalg::MatrixK;

use super::{ModuleError, NatTransform, Path, QuiverPresentation};

/// A representation of a quiver with relations by free finite-rank modules
/// over `R`: rank `r_x` at each vertex and an `r_y × r_x` matrix for each
/// arrow `x → y`. With `R = k` this is an ordinary persistence module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepModule {
    algebra: Arc<ArtinAlgebra>,
    quiver: Arc<QuiverPresentation>,
    ranks: Vec<usize>,
    maps: Vec<MatrixR>,
}

impl RepModule {
    /// Checks shapes and relations.
    pub fn new(
        algebra: Arc<ArtinAlgebra>,
        quiver: Arc<QuiverPresentation>,
        ranks: Vec<usize>,
        maps: Vec<MatrixR>,
    ) -> Result<Self, ModuleError> {
        let m = Self::unchecked(algebra, quiver, ranks, maps)?;
        m.validate()?;
        Ok(m)
    }

    /// Checks shapes only.
    pub fn unchecked(
        algebra: Arc<ArtinAlgebra>,
        quiver: Arc<QuiverPresentation>,
        ranks: Vec<usize>,
        maps: Vec<MatrixR>,
    ) -> Result<Self, ModuleError> {
        if ranks.len() != quiver.num_vertices() {
            return Err(ModuleError::ShapeMismatch(format!(
                "{} ranks for {} vertices",
                ranks.len(),
                quiver.num_vertices()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(ModuleError::ShapeMismatch(format!(
                "{} matrices for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.shape() != (ranks[a.target], ranks[a.source]) || m.layers().len() != algebra.dim() {
                return Err(ModuleError::ShapeMismatch(format!(
                    "arrow {} needs a {}x{} matrix over an algebra of dimension {}",
                    a.label,
                    ranks[a.target],
                    ranks[a.source],
                    algebra.dim()
                )));
            }
        }
        Ok(RepModule {
            algebra,
            quiver,
            ranks,
            maps,
        })
    }

    /// Module over `k` from k-matrices.
    pub fn over_field(
        algebra: Arc<ArtinAlgebra>,
        quiver: Arc<QuiverPresentation>,
        ranks: Vec<usize>,
        maps: Vec<MatrixK>,
    ) -> Result<Self, ModuleError> {
        let maps = maps.iter().map(|m| MatrixR::embed(&algebra, m)).collect();
        Self::new(algebra, quiver, ranks, maps)
    }

    pub fn zero(algebra: Arc<ArtinAlgebra>, quiver: Arc<QuiverPresentation>) -> Self {
        let ranks = vec![0; quiver.num_vertices()];
        let maps = quiver.arrows().iter().map(|_| MatrixR::zeros(&algebra, 0, 0)).collect();
        RepModule {
            algebra,
            quiver,
            ranks,
            maps,
        }
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.algebra
    }

    pub fn quiver(&self) -> &Arc<QuiverPresentation> {
        &self.quiver
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    pub fn maps(&self) -> &[MatrixR] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &MatrixR {
        &self.maps[arrow]
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `Σ_x r_x · ℓ(R)`, the dimension of the underlying k-space.
    pub fn total_dim_k(&self) -> usize {
        self.total_rank() * self.algebra.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// Evaluates every relation; the first nonzero one is reported.
    pub fn validate(&self) -> Result<(), ModuleError> {
        for (ri, rel) in self.quiver.relations().iter().enumerate() {
            let (_, first) = &rel.terms[0];
            let mut acc = MatrixR::zeros(&self.algebra, self.ranks[first.target], self.ranks[first.source]);
            for (c, path) in &rel.terms {
                acc = acc.add(&self.evaluate_path(path)?.scale_k(*c));
            }
            if !acc.is_zero() {
                return Err(ModuleError::RelationViolated {
                    relation: ri,
                    value: acc.to_coeff_rows(),
                });
            }
        }
        Ok(())
    }

    /// Ordered product of arrow matrices; identity for the empty path.
    pub fn evaluate_path(&self, path: &Path) -> Result<MatrixR, ModuleError> {
        self.quiver.check_path(path)?;
        let mut acc = MatrixR::identity(&self.algebra, self.ranks[path.source]);
        for &a in path.arrows.iter().rev() {
            acc = self.maps[a].mul(&self.algebra, &acc);
        }
        Ok(acc)
    }

    /// `k ⊗_R M`: entrywise residue.
    pub fn residue_module(&self, field_algebra: &Arc<ArtinAlgebra>) -> RepModule {
        assert!(field_algebra.is_field() && field_algebra.field() == self.algebra.field());
        let maps = self
            .maps
            .iter()
            .map(|m| MatrixR::embed(field_algebra, &m.residue()))
            .collect();
        RepModule {
            algebra: field_algebra.clone(),
            quiver: self.quiver.clone(),
            ranks: self.ranks.clone(),
            maps,
        }
    }

    /// Arrow matrices over `k`; only meaningful when `R = k`.
    pub fn k_maps(&self) -> Vec<MatrixK> {
        self.maps.iter().map(|m| m.residue()).collect()
    }

    /// `R ⊗_k V` for a module over `k`.
    pub fn base_extend(&self, target: &Arc<ArtinAlgebra>) -> RepModule {
        assert!(self.algebra.is_field() && target.field() == self.algebra.field());
        let maps = self.maps.iter().map(|m| MatrixR::embed(target, &m.residue())).collect();
        RepModule {
            algebra: target.clone(),
            quiver: self.quiver.clone(),
            ranks: self.ranks.clone(),
            maps,
        }
    }

    /// Change of coefficients along a coordinate map `theta: R → R'` that is
    /// an algebra morphism (e.g. a small extension).
    pub fn change_coefficients(&self, theta: &MatrixK, target: &Arc<ArtinAlgebra>) -> RepModule {
        assert_eq!(theta.shape(), (target.dim(), self.algebra.dim()));
        RepModule {
            algebra: target.clone(),
            quiver: self.quiver.clone(),
            ranks: self.ranks.clone(),
            maps: self.maps.iter().map(|m| m.map_coords(theta)).collect(),
        }
    }

    /// `g_y · M(a) · g_x⁻¹` for invertible vertex matrices `g`.
    pub fn conjugate(&self, g: &[MatrixR]) -> Result<RepModule, ModuleError> {
        let alg = &self.algebra;
        let inverses = g.iter().map(|m| m.inverse(alg)).collect::<Result<Vec<_>, _>>()?;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| g[a.target].mul(alg, &m.mul(alg, &inverses[a.source])))
            .collect();
        Self::new(alg.clone(), self.quiver.clone(), self.ranks.clone(), maps)
    }

    pub fn same_shape_context(&self, other: &RepModule) -> bool {
        self.algebra == other.algebra && self.quiver == other.quiver
    }
}

/// `⊕ modules` with canonical inclusions and projections.
pub fn direct_sum(
    modules: &[Arc<RepModule>],
) -> Result<(Arc<RepModule>, Vec<NatTransform>, Vec<NatTransform>), ModuleError> {
    let first = modules
        .first()
        .ok_or_else(|| ModuleError::ShapeMismatch("empty direct sum".into()))?;
    if modules.iter().any(|m| !m.same_shape_context(first)) {
        return Err(ModuleError::ContextMismatch);
    }
    let alg = first.algebra.clone();
    let quiver = first.quiver.clone();
    let nv = quiver.num_vertices();
    let ranks: Vec<usize> = (0..nv).map(|x| modules.iter().map(|m| m.ranks[x]).sum()).collect();
    let maps = (0..quiver.arrows().len())
        .map(|a| {
            let blocks: Vec<&MatrixR> = modules.iter().map(|m| &m.maps[a]).collect();
            MatrixR::block_diag(&alg, &blocks)
        })
        .collect();
    let sum = Arc::new(RepModule::unchecked(alg.clone(), quiver, ranks.clone(), maps)?);
    let mut offsets = vec![0usize; nv];
    let mut inclusions = Vec::with_capacity(modules.len());
    let mut projections = Vec::with_capacity(modules.len());
    for m in modules {
        let mut inc = Vec::with_capacity(nv);
        let mut proj = Vec::with_capacity(nv);
        for x in 0..nv {
            let (r, total, off) = (m.ranks[x], ranks[x], offsets[x]);
            let block = MatrixK::from_fn(alg.field(), total, r, |i, j| {
                if i == off + j {
                    alg.field().one()
                } else {
                    alg.field().zero()
                }
            });
            proj.push(MatrixR::embed(&alg, &block.transpose()));
            inc.push(MatrixR::embed(&alg, &block));
            offsets[x] += r;
        }
        inclusions.push(NatTransform::new(m.clone(), sum.clone(), inc)?);
        projections.push(NatTransform::new(sum.clone(), m.clone(), proj)?);
    }
    Ok((sum, inclusions, projections))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catmod::fixtures_for_tests::*;
    use crate::linalg::PrimeField;

    #[test]
    fn p1_satisfies_gamma_squared() {
        let (_, p1) = s1_and_p1(3);
        assert!(p1.validate().is_ok());
        let gg = p1.quiver().path(&["gamma", "gamma"], 0).unwrap();
        assert!(p1.evaluate_path(&gg).unwrap().is_zero());
    }

    #[test]
    fn unit_loop_violates_gamma_squared() {
        let k = PrimeField::new(3).unwrap();
        let alg = Arc::new(ArtinAlgebra::ground_field(k));
        let q = Arc::new(QuiverPresentation::truncated_loop(k, 2));
        let err = RepModule::over_field(alg, q, vec![1], vec![MatrixK::identity(k, 1)]).unwrap_err();
        assert_eq!(
            err,
            ModuleError::RelationViolated {
                relation: 0,
                value: vec![vec![vec![1]]]
            }
        );
    }

    #[test]
    fn relation_free_modules_always_validate() {
        let v = v_ex(2);
        assert!(v.validate().is_ok());
    }

    #[test]
    fn evaluate_paths_on_v_ex() {
        let v = v_ex(2);
        let q = v.quiver().clone();
        let e = q.path(&[], 1).unwrap();
        assert!(v.evaluate_path(&e).unwrap().is_identity());
        assert_eq!(v.evaluate_path(&e).unwrap().rows(), 2);
        let ba = q.path(&["a2", "a1"], 0).unwrap();
        let m = v.evaluate_path(&ba).unwrap();
        assert_eq!(m.shape(), (1, 1));
        assert!(m.is_zero());
    }

    #[test]
    fn direct_sum_ranks_and_blocks() {
        let (i12, i23) = (interval(2, 3, 1, 2), interval(2, 3, 2, 3));
        let (sum, inc, proj) = direct_sum(&[Arc::new(i12), Arc::new(i23)]).unwrap();
        assert_eq!(sum.ranks(), &[1, 2, 1]);
        for (i, p) in proj.iter().enumerate() {
            for (j, e) in inc.iter().enumerate() {
                let c = p.compose(e).unwrap();
                if i == j {
                    assert!(c.is_identity());
                } else {
                    assert!(c.is_zero());
                }
            }
        }
        // V_ex is exactly I[1,2] ⊕ I[2,3] in this basis order
        assert_eq!(*sum, v_ex(2));
    }

    #[test]
    fn residue_of_p1_is_s1() {
        let (s1, p1) = s1_and_p1(5);
        assert_eq!(p1.residue_module(s1.algebra()), s1);
    }

    #[test]
    fn direct_sum_with_zero() {
        let v = Arc::new(v_ex(3));
        let z = Arc::new(RepModule::zero(v.algebra().clone(), v.quiver().clone()));
        let (sum, inc, _) = direct_sum(&[v.clone(), z]).unwrap();
        assert_eq!(*sum, *v);
        assert!(inc[0].is_isomorphism());
    }
}
