//! Persistence modules indexed by finite quivers with relations, over a prime
//! field `k = F_p` and over local Artinian `k`-algebras given by structure
//! constants.
//!
//! The crate is organized bottom-up:
//!
//! * [`linalg`]: exact arithmetic in `F_p`, dense matrices, minimal polynomials.
//! * [`artin`]: local Artinian algebras `R`, matrices over `R`, small extensions.
//! * [`catmod`]: quivers with relations, modules over them, natural transformations
//!   and the `Hom` solver, lifts `(M, φ)` of a module `V` over `k`.
//! * [`decomp`]: endomorphism algebras, splitting into indecomposables, the
//!   scalar-endomorphism machinery for lifts, and the lift decomposition check.
//! * [`io`]: the JSON instance and report formats, built-in fixtures, barcodes.
//! * [`battery`]: randomized witness generation used by the test suites and CLI.

pub mod artin;
pub mod battery;
pub mod catmod;
pub mod decomp;
pub mod io;
pub mod linalg;
pub mod rng;

pub use artin::{AlgebraError, ArtinAlgebra, MatrixR, RingElem, SmallExtension};
pub use catmod::{LiftWitness, ModuleError, NatTransform, QuiverPresentation, RepModule};
pub use decomp::{Certificate, DecompError, Decomposition, DecompositionReport, Summand, Verdict};
pub use linalg::{FieldElem, MatrixK, PolyK, PrimeField};
