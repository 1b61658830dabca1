//! JSON and DOT forms of a diagram.

use serde::{Deserialize, Serialize};

use super::{StrandDiagram, VertexKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub d: usize,
    pub k: usize,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub free_loops: Vec<FreeLoopJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    pub gamma: i64,
    pub slot_at_split: Option<usize>,
    pub slot_at_merge: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeLoopJson {
    pub gamma: i64,
}

fn kind_name(k: VertexKind) -> &'static str {
    match k {
        VertexKind::Split => "split",
        VertexKind::Merge => "merge",
    }
}

impl StrandDiagram {
    pub fn to_json(&self) -> DiagramJson {
        let mut d = self.clone();
        d.compact();
        DiagramJson {
            d: d.d,
            k: d.k,
            vertices: d
                .vertex_ids()
                .map(|v| VertexJson {
                    id: v,
                    kind: kind_name(d.vertex(v).kind).into(),
                })
                .collect(),
            edges: d
                .edge_ids()
                .map(|e| {
                    let x = d.edge(e);
                    EdgeJson {
                        id: e,
                        from: x.from,
                        to: x.to,
                        gamma: x.gamma,
                        slot_at_split: d.slot_at_split(e),
                        slot_at_merge: d.slot_at_merge(e),
                    }
                })
                .collect(),
            free_loops: d.free_loops.iter().map(|&gamma| FreeLoopJson { gamma }).collect(),
        }
    }

    pub fn from_json(j: &DiagramJson) -> Result<StrandDiagram> {
        let mut d = StrandDiagram::new(j.d, j.k);
        for (i, v) in j.vertices.iter().enumerate() {
            if v.id != i {
                return Err(Error::Invalid(format!("vertex ids must be 0..n in order, found {}", v.id)));
            }
            let kind = match v.kind.as_str() {
                "split" => VertexKind::Split,
                "merge" => VertexKind::Merge,
                other => return Err(Error::Invalid(format!("unknown vertex kind '{other}'"))),
            };
            d.add_vertex(kind);
        }
        let n = j.vertices.len();
        for (i, e) in j.edges.iter().enumerate() {
            if e.id != i || e.from >= n || e.to >= n {
                return Err(Error::Invalid(format!("edge {} is malformed", e.id)));
            }
            let out = match d.vertex(e.from).kind {
                VertexKind::Split => e.slot_at_split,
                VertexKind::Merge => Some(0),
            };
            let inp = match d.vertex(e.to).kind {
                VertexKind::Merge => e.slot_at_merge,
                VertexKind::Split => Some(0),
            };
            let (Some(out), Some(inp)) = (out, inp) else {
                return Err(Error::Invalid(format!("edge {i} is missing a slot")));
            };
            if out >= d.vertex(e.from).outputs.len() || inp >= d.vertex(e.to).inputs.len() {
                return Err(Error::Invalid(format!("edge {i} has a slot out of range")));
            }
            d.add_edge(e.from, out, e.to, inp, e.gamma);
        }
        for l in &j.free_loops {
            d.add_free_loop(l.gamma);
        }
        d.validate().map_err(Error::Invalid)?;
        Ok(d)
    }

    /// Graphviz source: splits are triangles, merges inverted triangles,
    /// free loops double circles.
    pub fn to_dot(&self) -> String {
        let mut d = self.clone();
        d.compact();
        let mut s = String::from("digraph strand {\n  node [label=\"\"];\n");
        for v in d.vertex_ids() {
            let shape = match d.vertex(v).kind {
                VertexKind::Split => "triangle",
                VertexKind::Merge => "invtriangle",
            };
            s.push_str(&format!("  v{v} [shape={shape}];\n"));
        }
        for e in d.edge_ids() {
            let x = d.edge(e);
            let mut slot = String::new();
            if let Some(i) = d.slot_at_split(e) {
                slot.push_str(&format!(", split_slot={i}"));
            }
            if let Some(i) = d.slot_at_merge(e) {
                slot.push_str(&format!(", merge_slot={i}"));
            }
            s.push_str(&format!("  v{} -> v{} [label=\"\u{3b3}={}\"{slot}];\n", x.from, x.to, x.gamma));
        }
        for (i, g) in d.free_loops.iter().enumerate() {
            s.push_str(&format!("  loop{i} [shape=doublecircle, label=\"\u{3b3}={g}\"];\n"));
        }
        s.push_str("}\n");
        s
    }
}
