//! Small named modules used by fixtures, tests and the CLI.

use std::sync::Arc;

use crate::artin::{ArtinAlgebra, MatrixR};
use crate::linalg::{MatrixK, PrimeField};

use super::{QuiverPresentation, RepModule};

/// The interval module `I[b, d]` on the linear quiver `1 → … → n`
/// (1-based, inclusive), over `k`.
pub fn interval(field: PrimeField, n: usize, b: usize, d: usize) -> RepModule {
    assert!(1 <= b && b <= d && d <= n, "interval [{b},{d}] outside 1..={n}");
    let alg = Arc::new(ArtinAlgebra::ground_field(field));
    let q = Arc::new(QuiverPresentation::linear(n));
    let covered = |v: usize| b <= v + 1 && v < d;
    let ranks: Vec<usize> = (0..n).map(|v| usize::from(covered(v))).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (ranks[a.target], ranks[a.source]);
            if r == 1 && c == 1 {
                MatrixK::identity(field, 1)
            } else {
                MatrixK::zeros(field, r, c)
            }
        })
        .collect();
    RepModule::over_field(alg, q, ranks, maps).expect("interval modules are valid")
}

/// Ranks `(1, 2, 1)` on `1 → 2 → 3` with `α = (1, 0)ᵀ` and `β = (0, 1)`;
/// isomorphic to `I[1,2] ⊕ I[2,3]`.
pub fn two_bar_example(field: PrimeField) -> RepModule {
    let alg = Arc::new(ArtinAlgebra::ground_field(field));
    let q = Arc::new(QuiverPresentation::linear(3));
    let alpha = MatrixK::from_rows(field, &[vec![1], vec![0]]);
    let beta = MatrixK::from_rows(field, &[vec![0, 1]]);
    RepModule::over_field(alg, q, vec![1, 2, 1], vec![alpha, beta]).expect("valid module")
}

/// `S₁`: one vertex with loop `γ ↦ 0` and relation `γ² = 0`, over `k`.
pub fn loop_simple(field: PrimeField) -> RepModule {
    let alg = Arc::new(ArtinAlgebra::ground_field(field));
    let q = Arc::new(QuiverPresentation::truncated_loop(field, 2));
    RepModule::over_field(alg, q, vec![1], vec![MatrixK::zeros(field, 1, 1)]).expect("valid module")
}

/// `P₁`: the same quiver over the dual numbers with `γ ↦ (ε)`. A lift of
/// `S₁` that is not isomorphic to the trivial one.
pub fn loop_projective(field: PrimeField) -> RepModule {
    let alg = Arc::new(ArtinAlgebra::dual_numbers(field));
    let q = Arc::new(QuiverPresentation::truncated_loop(field, 2));
    let gamma = MatrixR::from_entries(&alg, 1, 1, &[alg.basis(1)]);
    RepModule::new(alg, q, vec![1], vec![gamma]).expect("valid module")
}

/// Rank 2 on the loop with `γ ↦ [[0,1],[0,0]]`: indecomposable, but its
/// endomorphism ring is `k[x]/(x²)` rather than `k`.
pub fn loop_nilpotent_rank2(field: PrimeField) -> RepModule {
    let alg = Arc::new(ArtinAlgebra::ground_field(field));
    let q = Arc::new(QuiverPresentation::truncated_loop(field, 2));
    let gamma = MatrixK::from_rows(field, &[vec![0, 1], vec![0, 0]]);
    RepModule::over_field(alg, q, vec![2], vec![gamma]).expect("valid module")
}
