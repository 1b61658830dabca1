//! Closed abstract strand diagrams with a rotation system and an integer
//! cutting-class representative.
//!
//! A split has one input and `d` ordered outputs, a merge `d` ordered inputs
//! and one output. The order of the lists is the rotation. Rewriting leaves
//! tombstones (`None`) that [`StrandDiagram::compact`] removes; every public
//! operation returns a compacted diagram.

mod cohomology;
mod export;
mod iso;
mod reconstruct;
mod reduce;

use std::collections::VecDeque;

use crate::element::TreePair;
use crate::tree::{Address, TreeParams};

pub use cohomology::{admissible_representative, dynamics_from_diagram, loops, DiagramDynamics, DiagramLoop, LoopKind};
pub use export::DiagramJson;
pub use iso::{iso, verify_iso, IsoMap};
pub use reconstruct::{diagram_to_revealing_pair, is_autt_translation_diagram, translation_diagram};
pub use reduce::{applicable, apply, reduce, reduce_shuffled, star_reduce, Reduction};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Split,
    Merge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    pub inputs: Vec<EdgeId>,
    pub outputs: Vec<EdgeId>,
}

impl Vertex {
    /// Edges in rotation order: the outputs of a split, the inputs of a merge.
    pub fn rotating(&self) -> &[EdgeId] {
        match self.kind {
            VertexKind::Split => &self.outputs,
            VertexKind::Merge => &self.inputs,
        }
    }

    /// The single edge on the other side.
    pub fn stem(&self) -> EdgeId {
        match self.kind {
            VertexKind::Split => self.inputs[0],
            VertexKind::Merge => self.outputs[0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub gamma: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandDiagram {
    d: usize,
    k: usize,
    vertices: Vec<Option<Vertex>>,
    edges: Vec<Option<Edge>>,
    free_loops: Vec<i64>,
}

impl StrandDiagram {
    pub fn new(d: usize, k: usize) -> Self {
        StrandDiagram {
            d,
            k,
            vertices: Vec::new(),
            edges: Vec::new(),
            free_loops: Vec::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Changes the root arity used for admissibility; the graph is unaffected.
    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn add_vertex(&mut self, kind: VertexKind) -> VertexId {
        let (ins, outs) = match kind {
            VertexKind::Split => (1, self.d),
            VertexKind::Merge => (self.d, 1),
        };
        self.vertices.push(Some(Vertex {
            kind,
            inputs: vec![usize::MAX; ins],
            outputs: vec![usize::MAX; outs],
        }));
        self.vertices.len() - 1
    }

    /// Adds an edge leaving `from` at output slot `out` and entering `to` at
    /// input slot `inp`.
    pub fn add_edge(&mut self, from: VertexId, out: usize, to: VertexId, inp: usize, gamma: i64) -> EdgeId {
        let id = self.edges.len();
        self.edges.push(Some(Edge { from, to, gamma }));
        self.vertex_mut(from).outputs[out] = id;
        self.vertex_mut(to).inputs[inp] = id;
        id
    }

    pub fn add_free_loop(&mut self, gamma: i64) {
        self.free_loops.push(gamma);
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        self.vertices[v].as_ref().expect("live vertex")
    }

    pub(crate) fn vertex_mut(&mut self, v: VertexId) -> &mut Vertex {
        self.vertices[v].as_mut().expect("live vertex")
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        self.edges[e].as_ref().expect("live edge")
    }

    pub(crate) fn edge_mut(&mut self, e: EdgeId) -> &mut Edge {
        self.edges[e].as_mut().expect("live edge")
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].is_some())
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).filter(|&e| self.edges[e].is_some())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.iter().flatten().count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().count()
    }

    pub fn free_loops(&self) -> &[i64] {
        &self.free_loops
    }

    pub fn set_gamma(&mut self, e: EdgeId, gamma: i64) {
        self.edge_mut(e).gamma = gamma;
    }

    /// Position of `e` among the outputs of its origin, if that is a split.
    pub fn slot_at_split(&self, e: EdgeId) -> Option<usize> {
        let v = self.vertex(self.edge(e).from);
        (v.kind == VertexKind::Split).then(|| v.outputs.iter().position(|&x| x == e).expect("consistent"))
    }

    /// Position of `e` among the inputs of its target, if that is a merge.
    pub fn slot_at_merge(&self, e: EdgeId) -> Option<usize> {
        let v = self.vertex(self.edge(e).to);
        (v.kind == VertexKind::Merge).then(|| v.inputs.iter().position(|&x| x == e).expect("consistent"))
    }

    pub fn total_gamma(&self) -> i64 {
        self.edges.iter().flatten().map(|e| e.gamma).sum::<i64>() + self.free_loops.iter().sum::<i64>()
    }

    /// Adds the coboundary of the potential `p`: `γ(e) += p(to) - p(from)`.
    pub fn add_coboundary(&mut self, p: &dyn Fn(VertexId) -> i64) {
        for e in self.edges.iter_mut().flatten() {
            e.gamma += p(e.to) - p(e.from);
        }
    }

    pub(crate) fn remove_vertex(&mut self, v: VertexId) {
        self.vertices[v] = None;
    }

    pub(crate) fn remove_edge(&mut self, e: EdgeId) {
        self.edges[e] = None;
    }

    /// Renumbers vertices and edges densely, preserving their relative order.
    pub fn compact(&mut self) {
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut n = 0;
        for (i, v) in self.vertices.iter().enumerate() {
            if v.is_some() {
                vmap[i] = n;
                n += 1;
            }
        }
        n = 0;
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_some() {
                emap[i] = n;
                n += 1;
            }
        }
        let vertices = std::mem::take(&mut self.vertices)
            .into_iter()
            .flatten()
            .map(|mut v| {
                v.inputs.iter_mut().for_each(|e| *e = emap[*e]);
                v.outputs.iter_mut().for_each(|e| *e = emap[*e]);
                Some(v)
            })
            .collect();
        let edges = std::mem::take(&mut self.edges)
            .into_iter()
            .flatten()
            .map(|mut e| {
                e.from = vmap[e.from];
                e.to = vmap[e.to];
                Some(e)
            })
            .collect();
        self.vertices = vertices;
        self.edges = edges;
    }

    /// Structural self-check: degrees, back references, slot uniqueness.
    pub fn validate(&self) -> Result<(), String> {
        for v in self.vertex_ids() {
            let x = self.vertex(v);
            let (ins, outs) = match x.kind {
                VertexKind::Split => (1, self.d),
                VertexKind::Merge => (self.d, 1),
            };
            if x.inputs.len() != ins || x.outputs.len() != outs {
                return Err(format!("vertex {v} has wrong degree"));
            }
            for &e in &x.inputs {
                if self.edges.get(e).and_then(|e| e.as_ref()).map(|e| e.to) != Some(v) {
                    return Err(format!("vertex {v} lists input {e} that does not enter it"));
                }
            }
            for &e in &x.outputs {
                if self.edges.get(e).and_then(|e| e.as_ref()).map(|e| e.from) != Some(v) {
                    return Err(format!("vertex {v} lists output {e} that does not leave it"));
                }
            }
        }
        for e in self.edge_ids() {
            let x = self.edge(e);
            let listed_out = self.vertices[x.from].as_ref().is_some_and(|v| v.outputs.iter().filter(|&&y| y == e).count() == 1);
            let listed_in = self.vertices[x.to].as_ref().is_some_and(|v| v.inputs.iter().filter(|&&y| y == e).count() == 1);
            if !listed_out || !listed_in {
                return Err(format!("edge {e} is not listed exactly once at its ends"));
            }
        }
        Ok(())
    }

    /// Undirected neighbours with the connecting edge.
    pub(crate) fn incident(&self, v: VertexId) -> Vec<(EdgeId, VertexId)> {
        let x = self.vertex(v);
        let mut out = Vec::with_capacity(x.inputs.len() + x.outputs.len());
        for &e in &x.outputs {
            out.push((e, self.edge(e).to));
        }
        for &e in &x.inputs {
            out.push((e, self.edge(e).from));
        }
        out
    }

    /// Weakly connected components of the vertex graph.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for s in self.vertex_ids() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for (_, w) in self.incident(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

/// The basic diagram of a tree pair before any reduction.
///
/// Internal vertices of the domain become splits and internal vertices of the
/// range become merges; each domain leaf `x` is wired to the slot of `κ(x)`
/// in its range parent, and the range root feeds the domain root through an
/// edge of weight one.
pub fn unreduced_basic_diagram(p: &TreePair) -> StrandDiagram {
    build_basic(p).0
}

/// The basic diagram with the hourglass over the common carets removed.
pub fn basic_diagram(p: &TreePair) -> StrandDiagram {
    let (mut dgm, root_edge) = build_basic(p);
    let params = p.params();
    let t1 = p.domain().internal();
    let t2 = p.range().internal();
    // Hourglass: melt the shared carets from the root down.
    let mut queue = VecDeque::from([(Address::root(), root_edge)]);
    while let Some((v, e)) = queue.pop_front() {
        let merged = reduce::type_ii(&mut dgm, e);
        for (i, c) in params.children(&v).into_iter().enumerate() {
            if t1.contains(&c) && t2.contains(&c) {
                queue.push_back((c, merged[i].expect("shared child continues as an edge")));
            }
        }
    }
    dgm.compact();
    dgm
}

fn build_basic(p: &TreePair) -> (StrandDiagram, EdgeId) {
    let params: TreeParams = p.params();
    let mut dgm = StrandDiagram::new(params.d, params.k);
    let mut split_at = std::collections::BTreeMap::new();
    let mut merge_at = std::collections::BTreeMap::new();
    let t1 = p.domain().internal();
    let t2 = p.range().internal();
    for v in &t1 {
        split_at.insert(v.clone(), dgm.add_split(params.arity(v)));
    }
    for w in &t2 {
        merge_at.insert(w.clone(), dgm.add_merge(params.arity(w)));
    }
    for v in &t1 {
        if let Some(parent) = v.parent() {
            dgm.add_edge(split_at[&parent], slot(v), split_at[v], 0, 0);
        }
    }
    for w in &t2 {
        if let Some(parent) = w.parent() {
            dgm.add_edge(merge_at[w], 0, merge_at[&parent], slot(w), 0);
        }
    }
    for (x, y) in p.map() {
        let from = split_at[&x.parent().expect("leaves are not the root")];
        let to = merge_at[&y.parent().expect("leaves are not the root")];
        dgm.add_edge(from, slot(x), to, slot(y), 0);
    }
    let root = Address::root();
    let root_edge = dgm.add_edge(merge_at[&root], 0, split_at[&root], 0, 1);
    (dgm, root_edge)
}

fn slot(v: &Address) -> usize {
    v.last().expect("not the root") as usize
}

impl StrandDiagram {
    /// A split whose arity may differ from `d` (the root split has `k` outputs).
    fn add_split(&mut self, arity: usize) -> VertexId {
        self.vertices.push(Some(Vertex {
            kind: VertexKind::Split,
            inputs: vec![usize::MAX],
            outputs: vec![usize::MAX; arity],
        }));
        self.vertices.len() - 1
    }

    fn add_merge(&mut self, arity: usize) -> VertexId {
        self.vertices.push(Some(Vertex {
            kind: VertexKind::Merge,
            inputs: vec![usize::MAX; arity],
            outputs: vec![usize::MAX],
        }));
        self.vertices.len() - 1
    }
}
