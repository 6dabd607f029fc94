//! Machine-readable reports. Every report is a JSON object with sorted keys
//! and no timing data, so a report is a pure function of `(input, seed)`.

use serde_json::{json, Value};

use crate::artin::{ArtinAlgebra, SmallExtension};
use crate::catmod::{HomSpace, NatTransform, RepModule};
use crate::decomp::{Certificate, Decomposition, DecompositionReport, EndAlgebra, Verdict};
use crate::linalg::FieldElem;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;

pub fn exit_code(verdict: &str) -> i32 {
    match verdict {
        "pass" => EXIT_PASS,
        "undecided" => EXIT_UNDECIDED,
        _ => EXIT_FAIL,
    }
}

/// Pretty-printed with a trailing newline.
pub fn to_text(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn ints(v: &[FieldElem]) -> Vec<u64> {
    v.iter().map(|x| u64::from(x.value())).collect()
}

fn module_block(m: &RepModule) -> Value {
    let arrows: serde_json::Map<String, Value> = m
        .quiver()
        .arrows()
        .iter()
        .zip(m.maps())
        .map(|(a, mat)| (a.label.clone(), json!(mat.to_coeff_rows())))
        .collect();
    json!({ "ranks": m.ranks(), "arrows": arrows })
}

fn summand_blocks(d: &Decomposition, partners: Option<&[usize]>) -> Vec<Value> {
    d.summands
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut block = module_block(&s.module);
            block["index"] = json!(i);
            block["certificate"] = json!(d.certificates[i].as_str());
            block["end_dim"] = json!(d.end_dims[i]);
            if let Some(p) = partners {
                block["partner"] = json!(p[i]);
            }
            block
        })
        .collect()
}

/// Pass only when every summand has `End = R`; a local but larger
/// endomorphism ring is reported as undecided.
pub fn decomposition_verdict(d: &Decomposition) -> Verdict {
    match d.certificates.iter().position(|&c| c != Certificate::ScalarRing) {
        None => Verdict::Pass,
        Some(i) => Verdict::Undecided(format!(
            "summand {i} is {} with endomorphism algebra of dimension {}",
            d.certificates[i].as_str(),
            d.end_dims[i]
        )),
    }
}

pub fn decompose_report(module: &str, d: &Decomposition, seed: u64) -> Value {
    let verdict = decomposition_verdict(d);
    json!({
        "command": "decompose",
        "module": module,
        "seed": seed,
        "ring_length": d.module.algebra().length(),
        "summands": summand_blocks(d, None),
        "verdict": verdict.label(),
        "reason": verdict.reason(),
    })
}

pub fn theorem_report(lift: &str, r: &DecompositionReport, seed: u64) -> Value {
    let length = r.base.module.algebra().length();
    json!({
        "command": "verify-theorem",
        "lift": lift,
        "seed": seed,
        "ring_length": r.lift.as_ref().map_or(length, |l| l.module.algebra().length()),
        "base_summands": summand_blocks(&r.base, None),
        "summands": r.lift.as_ref().map(|l| summand_blocks(l, r.matching.as_deref())),
        "matching": r.matching,
        "verdict": r.verdict.label(),
        "reason": r.verdict.reason(),
    })
}

pub fn chain_report(alg: &ArtinAlgebra, chain: &[SmallExtension]) -> Value {
    let steps: Vec<Value> = chain
        .iter()
        .enumerate()
        .map(|(i, e)| {
            json!({
                "step": i + 1,
                "source_basis": e.source.names(),
                "t": e.source.format_elem(&e.t),
                "target_basis": e.target.names(),
                "target_length": e.target.length(),
            })
        })
        .collect();
    json!({
        "command": "chain",
        "algebra_basis": alg.names(),
        "length": alg.length(),
        "chain": steps,
        "verdict": "pass",
    })
}

pub fn endring_report(module: &str, e: &EndAlgebra, ring_length: usize) -> Value {
    let scalar = e.dim() == ring_length;
    json!({
        "command": "endring",
        "module": module,
        "end_dim": e.dim(),
        "ring_length": ring_length,
        "scalar_ring": scalar,
        "basis": e.space.basis().iter().map(transform_block).collect::<Vec<_>>(),
        "table": e.table.iter().map(|row| row.iter().map(|c| ints(c)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "verdict": "pass",
    })
}

fn transform_block(f: &NatTransform) -> Value {
    json!(f.components().iter().map(|c| c.to_coeff_rows()).collect::<Vec<_>>())
}

pub fn hom_report(source: &str, target: &str, h: &HomSpace) -> Value {
    json!({
        "command": "hom",
        "source": source,
        "target": target,
        "dim": h.dim(),
        "basis": h.basis().iter().map(transform_block).collect::<Vec<_>>(),
        "verdict": "pass",
    })
}

pub fn barcode_report(module: &str, bars: &[(usize, usize)], text: &str, seed: u64) -> Value {
    json!({
        "command": "barcode",
        "module": module,
        "seed": seed,
        "intervals": bars.iter().map(|&(b, d)| [b, d]).collect::<Vec<_>>(),
        "text": text,
        "verdict": "pass",
    })
}

pub fn validate_report(inst: &super::Instance) -> Value {
    json!({
        "command": "validate",
        "algebra_dim": inst.algebra.dim(),
        "ring_length": inst.algebra.length(),
        "modules": inst.modules.keys().collect::<Vec<_>>(),
        "lifts": inst.lifts.keys().collect::<Vec<_>>(),
        "verdict": "pass",
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catmod::fixtures_for_tests::*;
    use crate::decomp::decompose;

    #[test]
    fn decompose_report_is_deterministic_and_sorted() {
        let v = Arc::new(v_ex(2));
        let d = decompose(&v, 7).unwrap();
        let a = to_text(&decompose_report("V_ex", &d, 7));
        let b = to_text(&decompose_report("V_ex", &decompose(&v, 7).unwrap(), 7));
        assert_eq!(a, b);
        let value: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(value["verdict"], "pass");
        assert_eq!(value["summands"].as_array().unwrap().len(), 2);
        let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code("pass"), 0);
        assert_eq!(exit_code("fail"), 1);
        assert_eq!(exit_code("undecided"), 2);
    }
}
