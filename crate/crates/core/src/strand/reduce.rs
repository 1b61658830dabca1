//! Type I, I*, II and III reductions.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{EdgeId, StrandDiagram, VertexId, VertexKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    /// Melt the merge–split pair at the ends of this edge.
    TypeII(EdgeId),
    /// Remove a split feeding one merge slot-by-slot.
    TypeI(VertexId),
    /// Remove a split feeding one merge in any slot order.
    TypeIStar(VertexId),
    /// Fuse `d` free loops of this value.
    TypeIII(i64),
}

/// Type II at the merge→split edge `e`. Every strand `a_i → e → b_i` through
/// the pair becomes one edge, or part of a free loop when the strands close
/// up among themselves. Returns, per strand index, the surviving edge.
pub(crate) fn type_ii(dgm: &mut StrandDiagram, e: EdgeId) -> Vec<Option<EdgeId>> {
    let edge = *dgm.edge(e);
    let (m, s, ge) = (edge.from, edge.to, edge.gamma);
    debug_assert_eq!(dgm.vertex(m).kind, VertexKind::Merge);
    debug_assert_eq!(dgm.vertex(s).kind, VertexKind::Split);
    let a = dgm.vertex(m).inputs.clone();
    let b = dgm.vertex(s).outputs.clone();
    let n = a.len();
    let next = |i: usize, dgm: &StrandDiagram| -> Option<usize> {
        (dgm.edge(b[i]).to == m).then(|| a.iter().position(|&x| x == b[i]).expect("enters m"))
    };
    let mut result = vec![None; n];
    let mut visited = vec![false; n];
    for i in 0..n {
        if dgm.edge(a[i]).from == s {
            continue;
        }
        let start = a[i];
        let mut value = dgm.edge(start).gamma;
        let mut chain = Vec::new();
        let mut cur = i;
        loop {
            visited[cur] = true;
            chain.push(cur);
            value += ge + dgm.edge(b[cur]).gamma;
            match next(cur, dgm) {
                Some(j) => cur = j,
                None => break,
            }
        }
        let end = b[cur];
        let target = dgm.edge(end).to;
        for x in dgm.vertex_mut(target).inputs.iter_mut() {
            if *x == end {
                *x = start;
            }
        }
        let se = dgm.edge_mut(start);
        se.to = target;
        se.gamma = value;
        for j in chain {
            result[j] = Some(start);
        }
    }
    for i in 0..n {
        if visited[i] {
            continue;
        }
        // An edge from s back into m lies on the cycle once, however many
        // times the strand list mentions it.
        let mut value = 0;
        let mut cur = i;
        loop {
            visited[cur] = true;
            value += ge + dgm.edge(a[cur]).gamma;
            cur = next(cur, dgm).expect("unvisited strands close up");
            if cur == i {
                break;
            }
        }
        dgm.add_free_loop(value);
    }
    dgm.remove_edge(e);
    for &x in &b {
        dgm.remove_edge(x);
    }
    dgm.remove_vertex(m);
    dgm.remove_vertex(s);
    result
}

/// A split all of whose outputs enter one merge with equal weight.
fn bigon_merge(dgm: &StrandDiagram, s: VertexId) -> Option<VertexId> {
    let v = dgm.vertex(s);
    if v.kind != VertexKind::Split {
        return None;
    }
    let first = dgm.edge(v.outputs[0]);
    let m = first.to;
    if dgm.vertex(m).kind != VertexKind::Merge {
        return None;
    }
    v.outputs
        .iter()
        .all(|&e| {
            let x = dgm.edge(e);
            x.to == m && x.gamma == first.gamma
        })
        .then_some(m)
}

fn is_type_i(dgm: &StrandDiagram, s: VertexId, star: bool) -> bool {
    let Some(m) = bigon_merge(dgm, s) else {
        return false;
    };
    star || dgm.vertex(s).outputs == dgm.vertex(m).inputs
}

fn type_i(dgm: &mut StrandDiagram, s: VertexId) {
    let m = bigon_merge(dgm, s).expect("checked by the caller");
    let es = dgm.vertex(s).inputs[0];
    let em = dgm.vertex(m).outputs[0];
    let outs = dgm.vertex(s).outputs.clone();
    let g1 = dgm.edge(outs[0]).gamma;
    for e in outs {
        dgm.remove_edge(e);
    }
    if es == em {
        let value = dgm.edge(es).gamma + g1;
        dgm.remove_edge(es);
        dgm.add_free_loop(value);
    } else {
        let value = dgm.edge(es).gamma + dgm.edge(em).gamma + g1;
        let target = dgm.edge(em).to;
        for x in dgm.vertex_mut(target).inputs.iter_mut() {
            if *x == em {
                *x = es;
            }
        }
        let e = dgm.edge_mut(es);
        e.to = target;
        e.gamma = value;
        dgm.remove_edge(em);
    }
    dgm.remove_vertex(s);
    dgm.remove_vertex(m);
}

fn type_iii_value(dgm: &StrandDiagram) -> Option<i64> {
    let mut values = dgm.free_loops().to_vec();
    values.sort();
    values
        .chunk_by(|a, b| a == b)
        .find(|run| run.len() >= dgm.d())
        .map(|run| run[0])
}

fn type_iii(dgm: &mut StrandDiagram, value: i64) {
    let mut removed = 0;
    let d = dgm.d();
    dgm.free_loops.retain(|&x| {
        if x == value && removed < d - 1 {
            removed += 1;
            false
        } else {
            true
        }
    });
}

fn find_type_ii(dgm: &StrandDiagram) -> Option<EdgeId> {
    dgm.edge_ids().find(|&e| {
        let x = dgm.edge(e);
        dgm.vertex(x.from).kind == VertexKind::Merge && dgm.vertex(x.to).kind == VertexKind::Split
    })
}

fn find_type_i(dgm: &StrandDiagram, star: bool) -> Option<VertexId> {
    dgm.vertex_ids().find(|&s| is_type_i(dgm, s, star))
}

/// Every reduction that applies right now.
pub fn applicable(dgm: &StrandDiagram, star: bool) -> Vec<Reduction> {
    let mut out: Vec<Reduction> = dgm
        .edge_ids()
        .filter(|&e| {
            let x = dgm.edge(e);
            dgm.vertex(x.from).kind == VertexKind::Merge && dgm.vertex(x.to).kind == VertexKind::Split
        })
        .map(Reduction::TypeII)
        .collect();
    for s in dgm.vertex_ids() {
        if is_type_i(dgm, s, star) {
            out.push(if star { Reduction::TypeIStar(s) } else { Reduction::TypeI(s) });
        }
    }
    let mut values = dgm.free_loops().to_vec();
    values.sort();
    for run in values.chunk_by(|a, b| a == b) {
        if run.len() >= dgm.d() {
            out.push(Reduction::TypeIII(run[0]));
        }
    }
    out
}

pub fn apply(dgm: &mut StrandDiagram, r: Reduction) {
    match r {
        Reduction::TypeII(e) => {
            type_ii(dgm, e);
        }
        Reduction::TypeI(s) | Reduction::TypeIStar(s) => type_i(dgm, s),
        Reduction::TypeIII(v) => type_iii(dgm, v),
    }
}

/// Applies Type I, II and III reductions until none is left.
pub fn reduce(dgm: &StrandDiagram) -> StrandDiagram {
    let mut out = dgm.clone();
    loop {
        if let Some(e) = find_type_ii(&out) {
            type_ii(&mut out, e);
        } else if let Some(s) = find_type_i(&out, false) {
            type_i(&mut out, s);
        } else if let Some(v) = type_iii_value(&out) {
            type_iii(&mut out, v);
        } else {
            break;
        }
    }
    out.compact();
    out
}

/// Like [`reduce`], picking each step uniformly among the applicable ones.
pub fn reduce_shuffled<R: Rng>(dgm: &StrandDiagram, rng: &mut R) -> StrandDiagram {
    let mut out = dgm.clone();
    loop {
        let options = applicable(&out, false);
        let Some(&r) = options.choose(rng) else { break };
        apply(&mut out, r);
    }
    out.compact();
    out
}

/// Type II until none applies, then Type I*, then Type III.
pub fn star_reduce(dgm: &StrandDiagram) -> StrandDiagram {
    let mut out = dgm.clone();
    while let Some(e) = find_type_ii(&out) {
        type_ii(&mut out, e);
    }
    while let Some(s) = find_type_i(&out, true) {
        type_i(&mut out, s);
    }
    while let Some(v) = type_iii_value(&out) {
        type_iii(&mut out, v);
    }
    debug_assert!(find_type_ii(&out).is_none());
    out.compact();
    out
}
