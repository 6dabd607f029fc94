use crate::linalg::{FieldElem, PrimeField};

use super::ModuleError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A composable arrow sequence written as a composition: `arrows[0]` is
/// applied last, so `[β, α]` is `β ∘ α`. An empty sequence is the identity
/// at `source == target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

/// `Σ_j c_j · path_j = 0` with all paths parallel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(FieldElem, Path)>,
}

/// A finite quiver with relations, standing in for the index category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
}

impl QuiverPresentation {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>, relations: Vec<Relation>) -> Result<Self, ModuleError> {
        let q = QuiverPresentation {
            vertices,
            arrows,
            relations,
        };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<(), ModuleError> {
        let nv = self.vertices.len();
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(ModuleError::InvalidQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source >= nv || a.target >= nv {
                return Err(ModuleError::InvalidQuiver(format!(
                    "arrow {:?} has an endpoint outside the vertex list",
                    a.label
                )));
            }
            if self.arrows[..i].iter().any(|b| b.label == a.label) {
                return Err(ModuleError::InvalidQuiver(format!("duplicate arrow {:?}", a.label)));
            }
        }
        for (ri, rel) in self.relations.iter().enumerate() {
            let Some((_, first)) = rel.terms.first() else {
                return Err(ModuleError::InvalidQuiver(format!("relation {ri} is empty")));
            };
            for (_, path) in &rel.terms {
                self.check_path(path)?;
                if path.source != first.source || path.target != first.target {
                    return Err(ModuleError::InvalidQuiver(format!(
                        "relation {ri} mixes non-parallel paths"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The linearly oriented `A_n`: `1 → 2 → … → n`, no relations.
    pub fn linear(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n)
            .map(|i| Arrow {
                label: format!("a{i}"),
                source: i - 1,
                target: i,
            })
            .collect();
        Self::new(vertices, arrows, Vec::new()).expect("A_n is well formed")
    }

    /// One vertex with a loop `γ` and the relation `γ^m = 0`.
    pub fn truncated_loop(field: PrimeField, m: usize) -> Self {
        let path = Path {
            source: 0,
            target: 0,
            arrows: vec![0; m],
        };
        Self::new(
            vec!["1".into()],
            vec![Arrow {
                label: "gamma".into(),
                source: 0,
                target: 0,
            }],
            vec![Relation {
                terms: vec![(field.one(), path)],
            }],
        )
        .expect("loop quiver is well formed")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Builds a path from arrow labels written as a composition
    /// (rightmost applied first). `start` is used only for the empty path.
    pub fn path(&self, labels: &[&str], start: usize) -> Result<Path, ModuleError> {
        let arrows = labels
            .iter()
            .map(|l| {
                self.arrow_index(l)
                    .ok_or_else(|| ModuleError::NotComposable(format!("unknown arrow {l:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let path = match (arrows.first(), arrows.last()) {
            (Some(&last), Some(&first)) => Path {
                source: self.arrows[first].source,
                target: self.arrows[last].target,
                arrows,
            },
            _ => Path {
                source: start,
                target: start,
                arrows,
            },
        };
        self.check_path(&path)?;
        Ok(path)
    }

    pub fn check_path(&self, path: &Path) -> Result<(), ModuleError> {
        if path.source >= self.vertices.len() || path.target >= self.vertices.len() {
            return Err(ModuleError::NotComposable("endpoint out of range".into()));
        }
        if path.arrows.iter().any(|&a| a >= self.arrows.len()) {
            return Err(ModuleError::NotComposable("arrow index out of range".into()));
        }
        if path.arrows.is_empty() {
            return if path.source == path.target {
                Ok(())
            } else {
                Err(ModuleError::NotComposable("empty path with distinct endpoints".into()))
            };
        }
        let first = *path.arrows.last().unwrap();
        let last = path.arrows[0];
        if self.arrows[first].source != path.source || self.arrows[last].target != path.target {
            return Err(ModuleError::NotComposable(
                "path endpoints disagree with its arrows".into(),
            ));
        }
        for w in path.arrows.windows(2) {
            let (outer, inner) = (&self.arrows[w[0]], &self.arrows[w[1]]);
            if outer.source != inner.target {
                return Err(ModuleError::NotComposable(format!(
                    "{} cannot follow {}",
                    outer.label, inner.label
                )));
            }
        }
        Ok(())
    }

    /// Vertex order `v_1 → v_2 → … → v_n` when this is a relation-free,
    /// linearly oriented `A_n`; `None` otherwise.
    pub fn linear_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        if !self.relations.is_empty() || self.arrows.len() + 1 != n.max(1) {
            return None;
        }
        if n == 0 {
            return Some(Vec::new());
        }
        let mut out_deg = vec![0; n];
        let mut in_deg = vec![0; n];
        let mut next = vec![None; n];
        for a in &self.arrows {
            if a.source == a.target {
                return None;
            }
            out_deg[a.source] += 1;
            in_deg[a.target] += 1;
            next[a.source] = Some(a.target);
        }
        if out_deg.iter().chain(&in_deg).any(|&d| d > 1) {
            return None;
        }
        let start = (0..n).find(|&v| in_deg[v] == 0)?;
        let mut order = vec![start];
        while let Some(v) = next[*order.last().unwrap()] {
            order.push(v);
        }
        (order.len() == n).then_some(order)
    }
}
