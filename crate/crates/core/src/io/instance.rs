//! The JSON instance format.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "field": {"p": 3},
//!   "algebra": {"basis_names": ["1", "eps"], "mult_table": [[1, 1, [0, 0]]]},
//!   "quiver": {
//!     "vertices": ["1"],
//!     "arrows": [{"label": "gamma", "source": "1", "target": "1"}],
//!     "relations": [{"terms": [{"coeff": 1, "path": ["gamma", "gamma"]}]}]
//!   },
//!   "modules": {
//!     "S1": {"ring": "k", "ranks": [1], "arrows": {"gamma": [[0]]}},
//!     "P1": {"ring": "R", "ranks": [1], "arrows": {"gamma": [[[0, 1]]]}}
//!   },
//!   "lifts": {"P1_over_S1": {"lift": "P1", "base": "S1", "phi": [[[1]]]}}
//! }
//! ```
//!
//! Products missing from `mult_table` are zero, except that products with
//! `b_0` default to the unit rule. A matrix entry is a coefficient vector in
//! the basis of the module's ring, or a bare integer `c` meaning `c · 1`.
//! Paths list arrow labels with the rightmost applied first; an empty path
//! needs an `at` vertex.

use std::collections::BTreeMap;
use std::path::Path as FsPath;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::artin::{ArtinAlgebra, MatrixR};
use crate::catmod::{Arrow, LiftWitness, Path, QuiverPresentation, Relation, RepModule};
use crate::linalg::{FieldElem, MatrixK, PrimeField};

use super::IoError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    schema: u32,
    field: RawField,
    algebra: RawAlgebra,
    quiver: RawQuiver,
    #[serde(default)]
    modules: BTreeMap<String, RawModule>,
    #[serde(default)]
    lifts: BTreeMap<String, RawLift>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    p: u64,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    basis_names: Vec<String>,
    #[serde(default)]
    mult_table: Vec<(usize, usize, Vec<i64>)>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawQuiver {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<RawArrow>,
    #[serde(default)]
    relations: Vec<RawRelation>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawArrow {
    label: String,
    source: String,
    target: String,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    terms: Vec<RawTerm>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coeff: i64,
    path: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    at: Option<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum RawEntry {
    Scalar(i64),
    Coeffs(Vec<i64>),
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    ring: String,
    ranks: Vec<usize>,
    #[serde(default)]
    arrows: BTreeMap<String, Vec<Vec<RawEntry>>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawLift {
    lift: String,
    base: String,
    phi: Vec<Vec<Vec<i64>>>,
}

/// A fully validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub field: PrimeField,
    pub algebra: Arc<ArtinAlgebra>,
    pub field_algebra: Arc<ArtinAlgebra>,
    pub quiver: Arc<QuiverPresentation>,
    pub modules: BTreeMap<String, Arc<RepModule>>,
    pub lifts: BTreeMap<String, LiftWitness>,
}

impl Instance {
    pub fn new(algebra: Arc<ArtinAlgebra>, quiver: Arc<QuiverPresentation>) -> Self {
        let field = algebra.field();
        Instance {
            field,
            field_algebra: Arc::new(ArtinAlgebra::ground_field(field)),
            algebra,
            quiver,
            modules: BTreeMap::new(),
            lifts: BTreeMap::new(),
        }
    }

    /// Adds a module, re-homing it onto this instance's shared algebra and quiver.
    pub fn add_module(&mut self, name: &str, m: &RepModule) {
        let alg = if m.algebra().is_field() && !self.algebra.is_field() {
            self.field_algebra.clone()
        } else {
            self.algebra.clone()
        };
        assert!(
            **m.algebra() == *alg && **m.quiver() == *self.quiver,
            "module {name} is foreign"
        );
        let m = RepModule::unchecked(alg, self.quiver.clone(), m.ranks().to_vec(), m.maps().to_vec())
            .expect("shapes already checked");
        self.modules.insert(name.to_string(), Arc::new(m));
    }

    pub fn add_lift(&mut self, name: &str, lift: &str, base: &str, phi: Vec<MatrixK>) {
        let w = LiftWitness {
            lift: self.modules[lift].clone(),
            base: self.modules[base].clone(),
            phi,
        };
        self.lifts.insert(name.to_string(), w);
    }

    pub fn module(&self, name: &str) -> Result<&Arc<RepModule>, IoError> {
        self.modules
            .get(name)
            .ok_or_else(|| IoError::UnknownModule(name.to_string()))
    }

    pub fn lift(&self, name: &str) -> Result<&LiftWitness, IoError> {
        self.lifts
            .get(name)
            .ok_or_else(|| IoError::UnknownLift(name.to_string()))
    }

    fn module_name(&self, m: &Arc<RepModule>) -> String {
        self.modules
            .iter()
            .find(|(_, v)| Arc::ptr_eq(v, m))
            .map(|(k, _)| k.clone())
            .expect("lift modules are registered")
    }

    /// Canonical JSON: sorted keys, reduced coefficients, every matrix entry
    /// written as a full coefficient vector.
    pub fn to_json(&self) -> serde_json::Value {
        let alg = &self.algebra;
        let n = alg.dim();
        let mut mult_table = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = alg.product_coords(i, j);
                if c.iter().any(|x| !x.is_zero()) {
                    mult_table.push((i, j, c.iter().map(|x| x.value() as i64).collect()));
                }
            }
        }
        let q = &self.quiver;
        let label = |v: usize| q.vertices()[v].clone();
        let raw = RawInstance {
            schema: SCHEMA_VERSION,
            field: RawField {
                p: self.field.modulus() as u64,
            },
            algebra: RawAlgebra {
                basis_names: alg.names().to_vec(),
                mult_table,
            },
            quiver: RawQuiver {
                vertices: q.vertices().to_vec(),
                arrows: q
                    .arrows()
                    .iter()
                    .map(|a| RawArrow {
                        label: a.label.clone(),
                        source: label(a.source),
                        target: label(a.target),
                    })
                    .collect(),
                relations: q
                    .relations()
                    .iter()
                    .map(|r| RawRelation {
                        terms: r
                            .terms
                            .iter()
                            .map(|(c, p)| RawTerm {
                                coeff: c.value() as i64,
                                path: p.arrows.iter().map(|&a| q.arrows()[a].label.clone()).collect(),
                                at: p.arrows.is_empty().then(|| label(p.source)),
                            })
                            .collect(),
                    })
                    .collect(),
            },
            modules: self
                .modules
                .iter()
                .map(|(name, m)| {
                    let arrows = q
                        .arrows()
                        .iter()
                        .zip(m.maps())
                        .map(|(a, mat)| {
                            let rows = mat
                                .to_coeff_rows()
                                .into_iter()
                                .map(|row| row.into_iter().map(RawEntry::Coeffs).collect())
                                .collect();
                            (a.label.clone(), rows)
                        })
                        .collect();
                    let ring = if m.algebra().is_field() { "k" } else { "R" };
                    let raw = RawModule {
                        ring: ring.into(),
                        ranks: m.ranks().to_vec(),
                        arrows,
                    };
                    (name.clone(), raw)
                })
                .collect(),
            lifts: self
                .lifts
                .iter()
                .map(|(name, w)| {
                    let raw = RawLift {
                        lift: self.module_name(&w.lift),
                        base: self.module_name(&w.base),
                        phi: w.phi.iter().map(MatrixK::to_i64_rows).collect(),
                    };
                    (name.clone(), raw)
                })
                .collect(),
        };
        serde_json::to_value(raw).expect("instance serializes")
    }

    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("value serializes");
        s.push('\n');
        s
    }
}

pub fn load_instance(path: &FsPath) -> Result<Instance, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

pub fn save_instance(inst: &Instance, path: &FsPath) -> Result<(), IoError> {
    std::fs::write(path, inst.to_canonical_string()).map_err(|e| IoError::Io(format!("{}: {e}", path.display())))
}

pub fn parse_instance(text: &str) -> Result<Instance, IoError> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| IoError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    build(raw)
}

fn invalid(msg: impl Into<String>) -> IoError {
    IoError::Validation(msg.into())
}

fn build(raw: RawInstance) -> Result<Instance, IoError> {
    if raw.schema != SCHEMA_VERSION {
        return Err(invalid(format!("unsupported schema version {}", raw.schema)));
    }
    let field = PrimeField::new(raw.field.p).map_err(|e| invalid(e.to_string()))?;
    let algebra = Arc::new(build_algebra(field, raw.algebra)?);
    let quiver = Arc::new(build_quiver(field, raw.quiver)?);
    let mut inst = Instance::new(algebra, quiver);

    for (name, m) in raw.modules {
        let alg = match m.ring.as_str() {
            "R" => inst.algebra.clone(),
            "k" => inst.field_algebra.clone(),
            other => {
                return Err(invalid(format!(
                    "module {name}: ring must be \"R\" or \"k\", got {other:?}"
                )))
            }
        };
        let module = build_module(&name, alg, &inst.quiver, m)?;
        inst.modules.insert(name, Arc::new(module));
    }
    for (name, l) in raw.lifts {
        let lift = inst
            .module(&l.lift)
            .map_err(|_| invalid(format!("lift {name}: unknown module {:?}", l.lift)))?;
        let base = inst
            .module(&l.base)
            .map_err(|_| invalid(format!("lift {name}: unknown module {:?}", l.base)))?;
        if l.phi.len() != inst.quiver.num_vertices() {
            return Err(invalid(format!("lift {name}: one phi matrix per vertex expected")));
        }
        let phi = l
            .phi
            .iter()
            .enumerate()
            .map(|(x, rows)| {
                int_matrix(field, rows, lift.rank(x))
                    .map_err(|e| invalid(format!("lift {name}, phi at vertex {x}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let w = LiftWitness::new(lift.clone(), base.clone(), phi).map_err(|e| IoError::Lift {
            name: name.clone(),
            source: e,
        })?;
        inst.lifts.insert(name, w);
    }
    Ok(inst)
}

fn build_algebra(field: PrimeField, raw: RawAlgebra) -> Result<ArtinAlgebra, IoError> {
    let n = raw.basis_names.len();
    if n == 0 {
        return Err(invalid("algebra needs at least the basis element 1"));
    }
    let unit = |i: usize, j: usize| -> Vec<FieldElem> {
        let mut v = vec![FieldElem::ZERO; n];
        if i == 0 {
            v[j] = FieldElem::ONE;
        } else if j == 0 {
            v[i] = FieldElem::ONE;
        }
        v
    };
    let mut table: Vec<Vec<Vec<FieldElem>>> = (0..n).map(|i| (0..n).map(|j| unit(i, j)).collect()).collect();
    for (i, j, coeffs) in raw.mult_table {
        if i >= n || j >= n || coeffs.len() != n {
            return Err(invalid(format!(
                "mult_table entry ({i}, {j}) does not fit a basis of size {n}"
            )));
        }
        table[i][j] = coeffs.iter().map(|&c| field.elem(c)).collect();
    }
    Ok(ArtinAlgebra::new(field, raw.basis_names, table)?)
}

fn build_quiver(field: PrimeField, raw: RawQuiver) -> Result<QuiverPresentation, IoError> {
    let vertex = |label: &str| {
        raw.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| invalid(format!("unknown vertex {label:?}")))
    };
    let arrows = raw
        .arrows
        .iter()
        .map(|a| {
            Ok(Arrow {
                label: a.label.clone(),
                source: vertex(&a.source)?,
                target: vertex(&a.target)?,
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    let bare = QuiverPresentation::new(raw.vertices.clone(), arrows.clone(), Vec::new())?;
    let mut relations = Vec::with_capacity(raw.relations.len());
    for rel in &raw.relations {
        let mut terms = Vec::with_capacity(rel.terms.len());
        for t in &rel.terms {
            let labels: Vec<&str> = t.path.iter().map(String::as_str).collect();
            let start = match (&t.at, labels.is_empty()) {
                (Some(v), _) => vertex(v)?,
                (None, false) => 0,
                (None, true) => return Err(invalid("an empty path needs an \"at\" vertex")),
            };
            let path: Path = bare.path(&labels, start)?;
            if t.at.is_some() && !labels.is_empty() && path.source != start {
                return Err(invalid(format!("path {:?} does not start at {:?}", t.path, t.at)));
            }
            terms.push((field.elem(t.coeff), path));
        }
        relations.push(Relation { terms });
    }
    Ok(QuiverPresentation::new(raw.vertices, arrows, relations)?)
}

fn build_module(
    name: &str,
    alg: Arc<ArtinAlgebra>,
    quiver: &Arc<QuiverPresentation>,
    raw: RawModule,
) -> Result<RepModule, IoError> {
    let ctx = |msg: String| invalid(format!("module {name}: {msg}"));
    if raw.ranks.len() != quiver.num_vertices() {
        return Err(ctx(format!(
            "{} ranks for {} vertices",
            raw.ranks.len(),
            quiver.num_vertices()
        )));
    }
    if let Some(extra) = raw.arrows.keys().find(|l| quiver.arrow_index(l).is_none()) {
        return Err(ctx(format!("unknown arrow {extra:?}")));
    }
    let n = alg.dim();
    let mut maps = Vec::with_capacity(quiver.arrows().len());
    for a in quiver.arrows() {
        let (rows, cols) = (raw.ranks[a.target], raw.ranks[a.source]);
        let Some(m) = raw.arrows.get(&a.label) else {
            if rows * cols == 0 {
                maps.push(MatrixR::zeros(&alg, rows, cols));
                continue;
            }
            return Err(ctx(format!("missing matrix for arrow {}", a.label)));
        };
        if m.len() != rows || m.iter().any(|r| r.len() != cols) {
            return Err(ctx(format!("arrow {} needs a {rows}x{cols} matrix", a.label)));
        }
        let coeff_rows = m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        RawEntry::Scalar(c) => {
                            let mut v = vec![0; n];
                            v[0] = *c;
                            Ok(v)
                        }
                        RawEntry::Coeffs(v) if v.len() == n => Ok(v.clone()),
                        RawEntry::Coeffs(v) => {
                            Err(ctx(format!("arrow {}: entry {v:?} needs {n} coefficients", a.label)))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        maps.push(MatrixR::from_coeff_rows(&alg, &coeff_rows, cols));
    }
    RepModule::new(alg, quiver.clone(), raw.ranks, maps).map_err(|e| IoError::Module {
        name: name.to_string(),
        source: e,
    })
}

fn int_matrix(field: PrimeField, rows: &[Vec<i64>], cols: usize) -> Result<MatrixK, String> {
    if rows.iter().any(|r| r.len() != cols) {
        return Err(format!("rows must have {cols} entries"));
    }
    let data = rows.iter().flatten().map(|&c| field.elem(c)).collect();
    Ok(MatrixK::from_elems(field, rows.len(), cols, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::AlgebraError;

    const P1: &str = r#"{
      "schema": 1,
      "field": {"p": 3},
      "algebra": {"basis_names": ["1", "eps"], "mult_table": [[1, 1, [0, 0]]]},
      "quiver": {
        "vertices": ["1"],
        "arrows": [{"label": "gamma", "source": "1", "target": "1"}],
        "relations": [{"terms": [{"coeff": 1, "path": ["gamma", "gamma"]}]}]
      },
      "modules": {
        "S1": {"ring": "k", "ranks": [1], "arrows": {"gamma": [[0]]}},
        "P1": {"ring": "R", "ranks": [1], "arrows": {"gamma": [[[0, 4]]]}}
      },
      "lifts": {"w": {"lift": "P1", "base": "S1", "phi": [[[1]]]}}
    }"#;

    #[test]
    fn parses_the_loop_instance() {
        let inst = parse_instance(P1).unwrap();
        assert_eq!(inst.algebra.dim(), 2);
        assert!(inst.modules["S1"].algebra().is_field());
        // 4 reduces to 1 mod 3
        assert_eq!(inst.modules["P1"].map(0).entry(0, 0), inst.algebra.basis(1));
        assert!(inst.lifts.contains_key("w"));
    }

    #[test]
    fn canonical_round_trip() {
        let inst = parse_instance(P1).unwrap();
        let text = inst.to_canonical_string();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["modules"]["P1"]["arrows"]["gamma"], serde_json::json!([[[0, 1]]]));
        assert_eq!(v["modules"]["S1"]["arrows"]["gamma"], serde_json::json!([[[0]]]));
        assert_eq!(parse_instance(&text).unwrap().to_canonical_string(), text);
    }

    #[test]
    fn empty_file_is_a_parse_error() {
        assert!(matches!(parse_instance(""), Err(IoError::Parse { .. })));
    }

    #[test]
    fn non_nilpotent_table_is_rejected() {
        let text = P1.replace("[[1, 1, [0, 0]]]", "[[1, 1, [1, 0]]]");
        assert!(matches!(
            parse_instance(&text),
            Err(IoError::Algebra(AlgebraError::MaxIdealNotNilpotent { .. }))
        ));
    }

    #[test]
    fn unnatural_phi_is_rejected() {
        let text = P1.replace(r#""phi": [[[1]]]"#, r#""phi": [[[0]]]"#);
        assert!(matches!(parse_instance(&text), Err(IoError::Lift { .. })));
    }

    #[test]
    fn relation_violation_names_the_module() {
        let text = P1.replace("[[[0, 4]]]", "[[[1, 0]]]");
        assert!(matches!(parse_instance(&text), Err(IoError::Module { ref name, .. }) if name == "P1"));
    }

    #[test]
    fn empty_path_relation() {
        // gamma^2 - 0·e = 0 written with an explicit empty path
        let text = P1.replace(
            r#"[{"coeff": 1, "path": ["gamma", "gamma"]}]"#,
            r#"[{"coeff": 1, "path": ["gamma", "gamma"]}, {"coeff": 0, "path": [], "at": "1"}]"#,
        );
        let inst = parse_instance(&text).unwrap();
        assert_eq!(inst.quiver.relations()[0].terms.len(), 2);
        let bad = P1.replace(
            r#"[{"coeff": 1, "path": ["gamma", "gamma"]}]"#,
            r#"[{"coeff": 1, "path": []}]"#,
        );
        assert!(matches!(parse_instance(&bad), Err(IoError::Validation(_))));
    }
}
