use std::fmt;
use std::sync::Arc;

use crate::catmod::{hom_basis, validate_lift, LiftWitness, NatTransform, RepModule};
use crate::linalg::FieldElem;
use crate::rng::XorShift64Star;

use super::decompose::{decompose, Certificate, Decomposition, RANDOM_SPLIT_ATTEMPTS};
use super::DecompError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Undecided(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::Undecided(_) => "undecided",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(r) | Verdict::Undecided(r) => Some(r),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason() {
            None => write!(f, "{}", self.label()),
            Some(r) => write!(f, "{}: {r}", self.label()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub base: Decomposition,
    /// Absent when the base already fails the hypothesis.
    pub lift: Option<Decomposition>,
    /// `matching[i]` is the base summand paired with lift summand `i`.
    pub matching: Option<Vec<usize>>,
    pub verdict: Verdict,
}

/// An isomorphism `a → b`, if one is found. Decisive when both `Hom` spaces
/// are one-dimensional; otherwise basis elements and up to
/// [`RANDOM_SPLIT_ATTEMPTS`] random combinations are tried.
pub fn find_isomorphism(
    a: &Arc<RepModule>,
    b: &Arc<RepModule>,
    rng: &mut XorShift64Star,
) -> Result<Option<NatTransform>, DecompError> {
    if a.ranks() != b.ranks() {
        return Ok(None);
    }
    let forward = hom_basis(a, b)?;
    if forward.dim() == 0 {
        return Ok(None);
    }
    let backward = hom_basis(b, a)?;
    if backward.dim() == 0 {
        return Ok(None);
    }
    if forward.dim() == 1 && backward.dim() == 1 {
        let (f, g) = (&forward.basis()[0], &backward.basis()[0]);
        let iso = !g.compose(f)?.is_zero() && f.is_isomorphism();
        return Ok(iso.then(|| f.clone()));
    }
    if let Some(f) = forward.basis().iter().find(|f| f.is_isomorphism()) {
        return Ok(Some(f.clone()));
    }
    let k = a.algebra().field();
    for _ in 0..RANDOM_SPLIT_ATTEMPTS {
        let coeffs: Vec<FieldElem> = (0..forward.dim())
            .map(|_| k.from_u64(rng.below(k.modulus() as u64)))
            .collect();
        let f = forward.combination(&coeffs);
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Pairs each lift summand with a base summand isomorphic to its residue,
/// greedily in order.
pub fn match_summands(
    lift_summands: &[Arc<RepModule>],
    base_summands: &[Arc<RepModule>],
    rng: &mut XorShift64Star,
) -> Result<Vec<usize>, DecompError> {
    let mut used = vec![false; base_summands.len()];
    let mut matching = Vec::with_capacity(lift_summands.len());
    for (i, m) in lift_summands.iter().enumerate() {
        let mut found = None;
        for (j, v) in base_summands.iter().enumerate() {
            if used[j] {
                continue;
            }
            let residue = Arc::new(m.residue_module(v.algebra()));
            if find_isomorphism(&residue, v, rng)?.is_some() {
                found = Some(j);
                break;
            }
        }
        let j = found.ok_or(DecompError::NoMatch { summand: i })?;
        used[j] = true;
        matching.push(j);
    }
    Ok(matching)
}

/// Checks that the lift splits into summands with endomorphism ring `R`
/// matching the summands of the base one to one.
///
/// The base is decomposed first; unless every base summand has `End = k` the
/// hypothesis is not met and the verdict is undecided. A lift summand with a
/// local endomorphism ring bigger than `R` is a genuine counterexample.
pub fn verify_theorem(w: &LiftWitness, seed: u64) -> Result<DecompositionReport, DecompError> {
    validate_lift(w)?;
    let base = decompose(&w.base, seed)?;
    if let Some(i) = base.certificates.iter().position(|&c| c != Certificate::ScalarRing) {
        let verdict = Verdict::Undecided(format!(
            "base summand {i} has an endomorphism algebra of dimension {}, not 1",
            base.end_dims[i]
        ));
        return Ok(DecompositionReport {
            base,
            lift: None,
            matching: None,
            verdict,
        });
    }
    let lift = decompose(&w.lift, seed)?;
    let length = w.lift.algebra().length();
    let mut matching = None;
    let verdict = if let Some(i) = lift.certificates.iter().position(|&c| c == Certificate::Undecided) {
        Verdict::Undecided(format!(
            "lift summand {i} could neither be split nor shown indecomposable"
        ))
    } else if lift.len() != base.len() {
        Verdict::Fail(format!("lift has {} summands, base has {}", lift.len(), base.len()))
    } else if let Some(i) = lift.certificates.iter().position(|&c| c == Certificate::LocalUnknown) {
        Verdict::Fail(format!(
            "lift summand {i} is indecomposable with endomorphism algebra of dimension {}, not {length}",
            lift.end_dims[i]
        ))
    } else {
        let mut rng = XorShift64Star::new(seed);
        let lift_modules: Vec<Arc<RepModule>> = lift.summands.iter().map(|s| s.module.clone()).collect();
        let base_modules: Vec<Arc<RepModule>> = base.summands.iter().map(|s| s.module.clone()).collect();
        match match_summands(&lift_modules, &base_modules, &mut rng) {
            Ok(m) => {
                matching = Some(m);
                Verdict::Pass
            }
            Err(DecompError::NoMatch { summand }) => {
                Verdict::Fail(format!("lift summand {summand} matches no base summand"))
            }
            Err(e) => return Err(e),
        }
    };
    Ok(DecompositionReport {
        base,
        lift: Some(lift),
        matching,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::{ArtinAlgebra, MatrixR};
    use crate::catmod::fixtures_for_tests::*;
    use crate::catmod::{standard, trivial_lift, QuiverPresentation};
    use crate::linalg::{MatrixK, PrimeField};
    use crate::rng::DEFAULT_SEED;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn p1_passes() {
        let (s1, p1) = s1_and_p1(3);
        let w = LiftWitness::new(Arc::new(p1), Arc::new(s1), vec![MatrixK::identity(k(3), 1)]).unwrap();
        let report = verify_theorem(&w, DEFAULT_SEED).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        let lift = report.lift.unwrap();
        assert_eq!(lift.len(), 1);
        assert_eq!(lift.end_dims, vec![2]);
        assert_eq!(report.matching, Some(vec![0]));
    }

    #[test]
    fn trivial_lifts_of_v_ex_pass() {
        let v = Arc::new(v_ex(2));
        for (alg, dim) in [
            (ArtinAlgebra::dual_numbers(k(2)), 2),
            (ArtinAlgebra::truncated_polynomial(k(2), 3, "e"), 3),
        ] {
            let w = trivial_lift(&v, &Arc::new(alg));
            let report = verify_theorem(&w, DEFAULT_SEED).unwrap();
            assert_eq!(report.verdict, Verdict::Pass);
            assert_eq!(report.lift.as_ref().unwrap().end_dims, vec![dim, dim]);
            assert_eq!(report.matching, Some(vec![0, 1]));
        }
    }

    #[test]
    fn hypothesis_failure_is_undecided() {
        let base = Arc::new(standard::loop_nilpotent_rank2(k(3)));
        let w = trivial_lift(&base, &Arc::new(ArtinAlgebra::dual_numbers(k(3))));
        let report = verify_theorem(&w, DEFAULT_SEED).unwrap();
        assert!(matches!(report.verdict, Verdict::Undecided(_)));
        assert!(report.lift.is_none());
    }

    /// Over `1 → 2` with `R = k[ε]`, the lift `R --ε--> R` of `S₁ ⊕ S₂` is
    /// indecomposable with a three-dimensional endomorphism ring.
    #[test]
    fn epsilon_arrow_lift_fails() {
        let field = k(2);
        let kalg = Arc::new(ArtinAlgebra::ground_field(field));
        let r = Arc::new(ArtinAlgebra::dual_numbers(field));
        let q = Arc::new(QuiverPresentation::linear(2));
        let base = RepModule::over_field(kalg, q.clone(), vec![1, 1], vec![MatrixK::zeros(field, 1, 1)]).unwrap();
        let eps = MatrixR::from_entries(&r, 1, 1, &[r.basis(1)]);
        let lift = RepModule::new(r, q, vec![1, 1], vec![eps]).unwrap();
        let phi = vec![MatrixK::identity(field, 1), MatrixK::identity(field, 1)];
        let w = LiftWitness::new(Arc::new(lift), Arc::new(base), phi).unwrap();
        let report = verify_theorem(&w, DEFAULT_SEED).unwrap();
        assert!(matches!(report.verdict, Verdict::Fail(_)), "{}", report.verdict);
        let lift = report.lift.unwrap();
        assert_eq!(lift.certificates, vec![Certificate::LocalUnknown]);
        assert_eq!(lift.end_dims, vec![3]);
        assert_eq!(report.base.len(), 2);
    }

    #[test]
    fn matching_rejects_wrong_ranks() {
        let a = Arc::new(interval(2, 3, 1, 2));
        let b = Arc::new(interval(2, 3, 2, 3));
        let mut rng = XorShift64Star::new(1);
        assert_eq!(
            match_summands(&[a.clone()], &[b.clone()], &mut rng),
            Err(DecompError::NoMatch { summand: 0 })
        );
        assert_eq!(
            match_summands(&[a.clone(), b.clone()], &[b, a], &mut rng),
            Ok(vec![1, 0])
        );
    }
}
