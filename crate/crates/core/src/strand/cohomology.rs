//! Loops, admissible cutting-class representatives and the dynamics they
//! encode.

use serde::Serialize;

use super::{EdgeId, StrandDiagram, VertexId, VertexKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopKind {
    SplitLoop,
    MergeLoop,
    FreeLoop,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramLoop {
    pub kind: LoopKind,
    /// Number of vertices, 0 for a free loop.
    pub length: usize,
    pub class_value: i64,
    #[serde(skip)]
    pub vertices: Vec<VertexId>,
    /// Loop edges in order; `edges[i]` leaves `vertices[i]`.
    #[serde(skip)]
    pub edges: Vec<EdgeId>,
}

/// Strongly connected components, iteratively.
fn sccs(dgm: &StrandDiagram) -> Vec<Vec<VertexId>> {
    let n = dgm.vertices.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for root in dgm.vertex_ids() {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(VertexId, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            let outs = &dgm.vertex(v).outputs;
            if *i < outs.len() {
                let w = dgm.edge(outs[*i]).to;
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("on stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort();
                    out.push(comp);
                }
            }
        }
    }
    out.sort();
    out
}

/// Every directed loop. In a reduced diagram these are disjoint simple
/// cycles made of splits only or merges only, plus the free loops.
pub fn loops(dgm: &StrandDiagram) -> Result<Vec<DiagramLoop>> {
    let mut in_comp = vec![usize::MAX; dgm.vertices.len()];
    let comps = sccs(dgm);
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            in_comp[v] = i;
        }
    }
    let mut out = Vec::new();
    for (ci, comp) in comps.iter().enumerate() {
        let inner_out = |v: VertexId| -> Vec<EdgeId> {
            dgm.vertex(v)
                .outputs
                .iter()
                .copied()
                .filter(|&e| in_comp[dgm.edge(e).to] == ci)
                .collect()
        };
        if comp.len() == 1 && inner_out(comp[0]).is_empty() {
            continue;
        }
        let kind = dgm.vertex(comp[0]).kind;
        for &v in comp {
            let ins = dgm.vertex(v).inputs.iter().filter(|&&e| in_comp[dgm.edge(e).from] == ci).count();
            if dgm.vertex(v).kind != kind || inner_out(v).len() != 1 || ins != 1 {
                return Err(Error::NotReduced(format!("vertex {v} lies on overlapping or mixed loops")));
            }
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut v = comp[0];
        loop {
            let e = inner_out(v)[0];
            vertices.push(v);
            edges.push(e);
            v = dgm.edge(e).to;
            if v == comp[0] {
                break;
            }
        }
        out.push(DiagramLoop {
            kind: match kind {
                VertexKind::Split => LoopKind::SplitLoop,
                VertexKind::Merge => LoopKind::MergeLoop,
            },
            length: vertices.len(),
            class_value: edges.iter().map(|&e| dgm.edge(e).gamma).sum(),
            vertices,
            edges,
        });
    }
    for &v in &dgm.free_loops {
        out.push(DiagramLoop {
            kind: LoopKind::FreeLoop,
            length: 0,
            class_value: v,
            vertices: Vec::new(),
            edges: Vec::new(),
        });
    }
    Ok(out)
}

fn has_merge_split_edge(dgm: &StrandDiagram) -> bool {
    dgm.edge_ids().any(|e| {
        let x = dgm.edge(e);
        dgm.vertex(x.from).kind == VertexKind::Merge && dgm.vertex(x.to).kind == VertexKind::Split
    })
}

/// Rewrites `γ` by a coboundary so that each loop carries its whole value on
/// one edge, tree edges inside split and merge parts carry nothing, the
/// split→merge edges are non-negative and the total is at least `k`.
pub fn admissible_representative(dgm: &StrandDiagram) -> Result<StrandDiagram> {
    if has_merge_split_edge(dgm) {
        return Err(Error::NotReduced("a merge feeds a split".into()));
    }
    let all = loops(dgm)?;
    let vertex_loops: Vec<&DiagramLoop> = all.iter().filter(|l| l.kind != LoopKind::FreeLoop).collect();
    for l in &all {
        if l.class_value <= 0 {
            return Err(Error::Inadmissible(format!("loop of value {} is not positive", l.class_value)));
        }
    }
    let n = dgm.vertices.len();
    let mut part = vec![usize::MAX; n];
    let mut pot: Vec<Option<i64>> = vec![None; n];
    for (i, l) in vertex_loops.iter().enumerate() {
        let mut p = 0;
        for (j, &v) in l.vertices.iter().enumerate() {
            part[v] = i;
            pot[v] = Some(p);
            p -= dgm.edge(l.edges[j]).gamma;
        }
    }
    // Tree vertices take the potential that zeroes the edge toward their loop.
    for v in dgm.vertex_ids() {
        let mut path = Vec::new();
        let mut cur = v;
        while pot[cur].is_none() {
            path.push(cur);
            let x = dgm.vertex(cur);
            cur = match x.kind {
                VertexKind::Split => dgm.edge(x.inputs[0]).from,
                VertexKind::Merge => dgm.edge(x.outputs[0]).to,
            };
            if path.len() > n {
                return Err(Error::NotReduced("a tree does not reach a loop".into()));
            }
        }
        for &w in path.iter().rev() {
            let x = dgm.vertex(w);
            let (next, value) = match x.kind {
                VertexKind::Split => {
                    let e = x.inputs[0];
                    let u = dgm.edge(e).from;
                    if dgm.vertex(u).kind != VertexKind::Split {
                        return Err(Error::NotReduced("a merge feeds a split".into()));
                    }
                    (u, pot[u].expect("set") - dgm.edge(e).gamma)
                }
                VertexKind::Merge => {
                    let e = x.outputs[0];
                    let u = dgm.edge(e).to;
                    (u, pot[u].expect("set") + dgm.edge(e).gamma)
                }
            };
            part[w] = part[next];
            pot[w] = Some(value);
        }
    }
    // Shift each merge part so its lowest incoming split→merge edge is zero.
    let mut shift = vec![0i64; vertex_loops.len()];
    let mut seen = vec![false; vertex_loops.len()];
    for e in dgm.edge_ids() {
        let x = dgm.edge(e);
        if dgm.vertex(x.from).kind == VertexKind::Split && dgm.vertex(x.to).kind == VertexKind::Merge {
            let base = x.gamma + pot[x.to].expect("set") - pot[x.from].expect("set");
            let p = part[x.to];
            shift[p] = if seen[p] { shift[p].max(-base) } else { -base };
            seen[p] = true;
        }
    }
    let mut out = dgm.clone();
    let potential = |v: VertexId| -> i64 {
        let base = pot[v].expect("set");
        if dgm.vertex(v).kind == VertexKind::Merge {
            base + shift[part[v]]
        } else {
            base
        }
    };
    out.add_coboundary(&potential);

    let d = dgm.d as i64;
    let k = dgm.k as i64;
    let mut total = out.total_gamma();
    if (total - k).rem_euclid(d - 1) != 0 {
        return Err(Error::Inadmissible(format!("total {total} is not congruent to k={k} mod {}", d - 1)));
    }
    if total < k {
        let Some(first) = vertex_loops.iter().position(|l| l.kind == LoopKind::MergeLoop) else {
            return Err(Error::Inadmissible(format!("free loops total {total} < k={k}")));
        };
        let merges: Vec<VertexId> = dgm.vertex_ids().filter(|&v| part[v] == first && dgm.vertex(v).kind == VertexKind::Merge).collect();
        let step = (d - 1) * merges.len() as i64;
        let times = (k - total + step - 1) / step;
        let bump = |v: VertexId| if part[v] == first && dgm.vertex(v).kind == VertexKind::Merge { times } else { 0 };
        out.add_coboundary(&bump);
        total = out.total_gamma();
    }
    debug_assert!(total >= k);
    debug_assert!(out.edge_ids().all(|e| out.edge(e).gamma >= 0));
    Ok(out)
}

/// Dynamics encoded by a reduced diagram. Pairs are `(period, length)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramDynamics {
    pub attractors: Vec<(usize, usize)>,
    pub repellers: Vec<(usize, usize)>,
    pub stable_ball_residue: usize,
    pub component_count: usize,
}

pub fn dynamics_from_diagram(dgm: &StrandDiagram) -> Result<DiagramDynamics> {
    let mut attractors = Vec::new();
    let mut repellers = Vec::new();
    let mut free = 0i64;
    for l in loops(dgm)? {
        let datum = (l.class_value.max(0) as usize, l.length);
        match l.kind {
            LoopKind::MergeLoop => attractors.push(datum),
            LoopKind::SplitLoop => repellers.push(datum),
            LoopKind::FreeLoop => free += l.class_value,
        }
    }
    attractors.sort();
    repellers.sort();
    Ok(DiagramDynamics {
        attractors,
        repellers,
        stable_ball_residue: free.rem_euclid(dgm.d as i64 - 1) as usize,
        component_count: dgm.components().len() + dgm.free_loops.len(),
    })
}
