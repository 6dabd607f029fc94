//! Built-in instances and the reports expected from them.
//!
//! `fixtures/<name>.json` holds each instance and
//! `fixtures/expected/<name>/<command>-<target>.json` its reports under
//! [`DEFAULT_SEED`](crate::rng::DEFAULT_SEED).

use std::sync::Arc;

use crate::artin::{extension_chain, ArtinAlgebra, MatrixR};
use crate::catmod::{direct_sum, standard, trivial_lift, QuiverPresentation, RepModule};
use crate::decomp::{decompose, verify_theorem};
use crate::linalg::{MatrixK, PrimeField};

use super::report::{barcode_report, chain_report, decompose_report, theorem_report, to_text};
use super::{barcode, render_barcode, Instance, IoError};

pub const FIXTURE_NAMES: [&str; 7] = [
    "dual_numbers_p1",
    "a3_intervals",
    "a3_dual_numbers",
    "a3_truncated_cubic",
    "cycle_rank2",
    "square_zero",
    "a2_counterexample",
];

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).expect("fixture primes are prime")
}

fn identities(m: &RepModule) -> Vec<MatrixK> {
    let k = m.algebra().field();
    m.ranks().iter().map(|&r| MatrixK::identity(k, r)).collect()
}

/// Registers `base` under `base_name` and its trivial lift over `alg` as
/// module `R_<base_name>` and lift `trivial`.
fn with_trivial_lift(alg: Arc<ArtinAlgebra>, base_name: &str, base: RepModule) -> Instance {
    let base = Arc::new(base);
    let mut inst = Instance::new(alg.clone(), base.quiver().clone());
    let w = trivial_lift(&base, &alg);
    let lift_name = format!("R_{base_name}");
    inst.add_module(base_name, &base);
    inst.add_module(&lift_name, &w.lift);
    inst.add_lift("trivial", &lift_name, base_name, w.phi);
    inst
}

pub fn builtin(name: &str) -> Option<Instance> {
    let inst = match name {
        "dual_numbers_p1" => {
            let k = field(3);
            let mut inst = with_trivial_lift(Arc::new(ArtinAlgebra::dual_numbers(k)), "S1", standard::loop_simple(k));
            inst.add_module("P1", &standard::loop_projective(k));
            inst.add_lift("P1_over_S1", "P1", "S1", vec![MatrixK::identity(k, 1)]);
            inst
        }
        "a3_intervals" => {
            let k = field(2);
            let v = standard::two_bar_example(k);
            let mut inst = with_trivial_lift(Arc::new(ArtinAlgebra::ground_field(k)), "V_ex", v);
            inst.add_module("I12", &standard::interval(k, 3, 1, 2));
            inst.add_module("I23", &standard::interval(k, 3, 2, 3));
            inst
        }
        "a3_dual_numbers" => {
            let k = field(3);
            with_trivial_lift(
                Arc::new(ArtinAlgebra::dual_numbers(k)),
                "V_ex",
                standard::two_bar_example(k),
            )
        }
        "a3_truncated_cubic" => {
            let k = field(2);
            let alg = ArtinAlgebra::truncated_polynomial(k, 3, "e");
            with_trivial_lift(Arc::new(alg), "V_ex", standard::two_bar_example(k))
        }
        "cycle_rank2" => {
            let k = field(3);
            let alg = Arc::new(ArtinAlgebra::dual_numbers(k));
            let mut inst = with_trivial_lift(alg, "N", standard::loop_nilpotent_rank2(k));
            inst.add_module("S1", &standard::loop_simple(k));
            inst
        }
        "square_zero" => square_zero(),
        "a2_counterexample" => a2_counterexample(),
        _ => return None,
    };
    Some(inst)
}

/// `V_ex` over `k[x,y]/(x², xy, y²)`: a lift obtained by conjugating the
/// trivial one, and a lift whose path `βα` becomes `x`.
fn square_zero() -> Instance {
    let k = field(2);
    let alg = Arc::new(ArtinAlgebra::square_zero(k, &["x", "y"]));
    let v = standard::two_bar_example(k);
    let phi = identities(&v);
    let mut inst = with_trivial_lift(alg.clone(), "V_ex", v);
    let trivial = inst.modules["R_V_ex"].clone();

    let (one, x, y) = (alg.one(), alg.basis(1), alg.basis(2));
    let g2 = MatrixR::from_entries(&alg, 2, 2, &[one.clone(), x.clone(), y, one]);
    let g = vec![MatrixR::identity(&alg, 1), g2, MatrixR::identity(&alg, 1)];
    let conjugated = trivial.conjugate(&g).expect("g has unit residue");
    inst.add_module("conjugated", &conjugated);
    inst.add_lift("conjugated", "conjugated", "V_ex", phi.clone());

    let alpha = MatrixR::from_entries(&alg, 2, 1, &[alg.one(), x]);
    let beta = trivial.map(1).clone();
    let q = trivial.quiver().clone();
    let perturbed = RepModule::new(alg, q, vec![1, 2, 1], vec![alpha, beta]).expect("no relations on A_3");
    inst.add_module("perturbed", &perturbed);
    inst.add_lift("perturbed", "perturbed", "V_ex", phi);
    inst
}

/// `S₁ ⊕ S₂` on `1 → 2` and its lift `R --ε--> R` over the dual numbers.
fn a2_counterexample() -> Instance {
    let k = field(2);
    let alg = Arc::new(ArtinAlgebra::dual_numbers(k));
    let kalg = Arc::new(ArtinAlgebra::ground_field(k));
    let q = Arc::new(QuiverPresentation::linear(2));
    let s = |b: usize| Arc::new(standard::interval(k, 2, b, b));
    let (base, _, _) = direct_sum(&[s(1), s(2)]).expect("same context");
    let base = RepModule::over_field(kalg, q.clone(), base.ranks().to_vec(), base.k_maps()).expect("valid");
    let eps = MatrixR::from_entries(&alg, 1, 1, &[alg.basis(1)]);
    let lift = RepModule::new(alg.clone(), q, vec![1, 1], vec![eps]).expect("no relations on A_2");
    let phi = identities(&base);
    let mut inst = with_trivial_lift(alg, "S1_plus_S2", base);
    inst.add_module("eps_arrow", &lift);
    inst.add_lift("eps_arrow", "eps_arrow", "S1_plus_S2", phi);
    inst
}

/// Every report shipped with a fixture, as `(relative path, text)` pairs:
/// `decompose` and, on linear quivers over `k`, `barcode` for each module;
/// `verify-theorem` for each lift; and `chain` for the algebra.
pub fn expected_reports(inst: &Instance, seed: u64) -> Result<Vec<(String, String)>, IoError> {
    let mut out = Vec::new();
    for (name, m) in &inst.modules {
        let d = decompose(m, seed)?;
        out.push((
            format!("decompose-{name}.json"),
            to_text(&decompose_report(name, &d, seed)),
        ));
        if m.algebra().is_field() && m.quiver().linear_order().is_some() {
            let bars = barcode(m, seed)?;
            let text = render_barcode(&bars, m.quiver().vertices());
            out.push((
                format!("barcode-{name}.json"),
                to_text(&barcode_report(name, &bars, &text, seed)),
            ));
        }
    }
    for (name, w) in &inst.lifts {
        let r = verify_theorem(w, seed)?;
        out.push((
            format!("verify-theorem-{name}.json"),
            to_text(&theorem_report(name, &r, seed)),
        ));
    }
    let chain = extension_chain(&inst.algebra)?;
    out.push(("chain.json".to_string(), to_text(&chain_report(&inst.algebra, &chain))));
    Ok(out)
}
