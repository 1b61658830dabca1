//! From a reduced diagram back to a revealing pair, and the translation
//! diagrams of the unrooted regular tree.

use std::collections::BTreeMap;

use super::cohomology::{admissible_representative, loops, LoopKind};
use super::iso::iso;
use super::{EdgeId, StrandDiagram, VertexId, VertexKind};
use crate::element::TreePair;
use crate::error::{Error, Result};
use crate::tree::{Address, CompleteTree, TreeParams};

/// Cuts every edge `γ(e)` times (after moving to an admissible
/// representative), hangs the cut points off a complete tree with as many
/// leaves, and reads the domain and range trees off the pieces.
///
/// The intermediate tree grows by always splitting its shortlex-least leaf.
/// Cut points are numbered by edge, then position along the edge, then the
/// free loops, and matched to the tree's leaves in shortlex order.
pub fn diagram_to_revealing_pair(dgm: &StrandDiagram, params: TreeParams) -> Result<TreePair> {
    if dgm.d() != params.d {
        return Err(Error::Invalid(format!("diagram has degree {}, tree has d={}", dgm.d(), params.d)));
    }
    let rep = admissible_representative(&expand_free_loops(dgm, params.k))?;
    let mut base: BTreeMap<EdgeId, usize> = BTreeMap::new();
    let mut n = 0usize;
    for e in rep.edge_ids() {
        base.insert(e, n);
        n += rep.edge(e).gamma as usize;
    }
    let mut loop_base = Vec::new();
    for &v in rep.free_loops() {
        loop_base.push(n);
        n += v as usize;
    }
    let tree = left_tree(params, n)?;
    let cut = |i: usize| tree.leaves()[i].clone();

    let mut a1: BTreeMap<VertexId, Address> = BTreeMap::new();
    let mut a2: BTreeMap<VertexId, Address> = BTreeMap::new();
    for v in rep.vertex_ids() {
        match rep.vertex(v).kind {
            VertexKind::Split => {
                split_address(&rep, v, &base, &cut, &mut a1)?;
            }
            VertexKind::Merge => {
                merge_address(&rep, v, &base, &cut, &mut a2)?;
            }
        }
    }

    let mut pairs = Vec::new();
    for e in rep.edge_ids() {
        let x = rep.edge(e);
        let g = x.gamma as usize;
        let origin = match rep.vertex(x.from).kind {
            VertexKind::Split => Some(a1[&x.from].child(slot_out(&rep, x.from, e) as u8)),
            VertexKind::Merge => None,
        };
        let target = match rep.vertex(x.to).kind {
            VertexKind::Merge => Some(a2[&x.to].child(slot_in(&rep, x.to, e) as u8)),
            VertexKind::Split => None,
        };
        let b = base[&e];
        let starts = std::iter::once(origin).chain((0..g).map(|i| Some(cut(b + i))));
        let ends = (0..g).map(|i| Some(cut(b + i))).chain(std::iter::once(target));
        for (s, t) in starts.zip(ends) {
            if let (Some(s), Some(t)) = (s, t) {
                pairs.push((s, t));
            }
        }
    }
    for (i, &v) in rep.free_loops().iter().enumerate() {
        let v = v as usize;
        for j in 0..v {
            pairs.push((cut(loop_base[i] + j), cut(loop_base[i] + (j + 1) % v)));
        }
    }
    TreePair::new(params, pairs).map_err(|e| Error::Internal(format!("reconstruction is not a tree pair: {e}")))
}

/// Undoes Type III on a diagram made of free loops only, splitting the
/// smallest loop into `d` copies until the total reaches `k`.
fn expand_free_loops(dgm: &StrandDiagram, k: usize) -> StrandDiagram {
    let mut out = dgm.clone().with_k(k);
    if out.vertex_count() > 0 || out.free_loops().iter().any(|&v| v <= 0) {
        return out;
    }
    while out.total_gamma() < k as i64 {
        let mut values = out.free_loops().to_vec();
        values.sort();
        let Some(&v) = values.first() else { break };
        let mut fresh = StrandDiagram::new(out.d(), k);
        let mut split = false;
        for &w in &values {
            if w == v && !split {
                (0..out.d()).for_each(|_| fresh.add_free_loop(v));
                split = true;
            } else {
                fresh.add_free_loop(w);
            }
        }
        out = fresh;
    }
    out
}

fn left_tree(params: TreeParams, n: usize) -> Result<CompleteTree> {
    if n < params.k || (n - params.k) % (params.d - 1) != 0 {
        return Err(Error::Inadmissible(format!("{n} cut points do not fit T({},{})", params.d, params.k)));
    }
    let mut t = CompleteTree::trivial(params);
    while t.leaf_count() < n {
        let least = t.leaves()[0].clone();
        t = t.split_leaf(&least)?;
    }
    Ok(t)
}

fn slot_out(dgm: &StrandDiagram, v: VertexId, e: EdgeId) -> usize {
    dgm.vertex(v).outputs.iter().position(|&x| x == e).expect("listed")
}

fn slot_in(dgm: &StrandDiagram, v: VertexId, e: EdgeId) -> usize {
    dgm.vertex(v).inputs.iter().position(|&x| x == e).expect("listed")
}

/// Address of a split: the last cut behind it, extended by the slots of the
/// splits in between.
fn split_address(
    dgm: &StrandDiagram,
    v: VertexId,
    base: &BTreeMap<EdgeId, usize>,
    cut: &dyn Fn(usize) -> Address,
    memo: &mut BTreeMap<VertexId, Address>,
) -> Result<Address> {
    let mut path = Vec::new();
    let mut cur = v;
    let mut addr = loop {
        if let Some(a) = memo.get(&cur) {
            break a.clone();
        }
        let f = dgm.vertex(cur).inputs[0];
        let g = dgm.edge(f).gamma as usize;
        if g > 0 {
            let a = cut(base[&f] + g - 1);
            memo.insert(cur, a.clone());
            break a;
        }
        let u = dgm.edge(f).from;
        if dgm.vertex(u).kind != VertexKind::Split || path.len() > dgm.vertex_count() {
            return Err(Error::Inadmissible("a split is not separated from the loops by a cut".into()));
        }
        path.push((cur, slot_out(dgm, u, f)));
        cur = u;
    };
    for &(w, s) in path.iter().rev() {
        addr = addr.child(s as u8);
        memo.insert(w, addr.clone());
    }
    Ok(addr)
}

/// Address of a merge: the first cut after it, extended by the slots of the
/// merges in between.
fn merge_address(
    dgm: &StrandDiagram,
    v: VertexId,
    base: &BTreeMap<EdgeId, usize>,
    cut: &dyn Fn(usize) -> Address,
    memo: &mut BTreeMap<VertexId, Address>,
) -> Result<Address> {
    let mut path = Vec::new();
    let mut cur = v;
    let mut addr = loop {
        if let Some(a) = memo.get(&cur) {
            break a.clone();
        }
        let g = dgm.vertex(cur).outputs[0];
        if dgm.edge(g).gamma > 0 {
            let a = cut(base[&g]);
            memo.insert(cur, a.clone());
            break a;
        }
        let u = dgm.edge(g).to;
        if dgm.vertex(u).kind != VertexKind::Merge || path.len() > dgm.vertex_count() {
            return Err(Error::Inadmissible("a merge is not separated from the loops by a cut".into()));
        }
        path.push((cur, slot_in(dgm, u, g)));
        cur = u;
    };
    for &(w, s) in path.iter().rev() {
        addr = addr.child(s as u8);
        memo.insert(w, addr.clone());
    }
    Ok(addr)
}

/// The translation of length `n`: split loop `e_1..e_n`, merge loop
/// `f_1..f_n`, and the other `d - 1` outputs of the `i`-th split all entering
/// the `i`-th merge. Weight one on `e_1` and `f_1`, zero elsewhere.
pub fn translation_diagram(d: usize, k: usize, n: usize) -> StrandDiagram {
    assert!(n >= 1 && d >= 2);
    let mut dgm = StrandDiagram::new(d, k);
    let splits: Vec<VertexId> = (0..n).map(|_| dgm.add_vertex(VertexKind::Split)).collect();
    let merges: Vec<VertexId> = (0..n).map(|_| dgm.add_vertex(VertexKind::Merge)).collect();
    for i in 0..n {
        let gamma = i64::from(i == 0);
        dgm.add_edge(splits[i], 0, splits[(i + 1) % n], 0, gamma);
        dgm.add_edge(merges[i], 0, merges[(i + 1) % n], 0, gamma);
        for j in 1..d {
            dgm.add_edge(splits[i], j, merges[i], j, 0);
        }
    }
    dgm
}

/// `Some(n)` when the diagram is, up to rotation, the length-`n` translation.
pub fn is_autt_translation_diagram(dgm: &StrandDiagram) -> Option<usize> {
    let all = loops(dgm).ok()?;
    let splits: Vec<_> = all.iter().filter(|l| l.kind == LoopKind::SplitLoop).collect();
    let [only] = splits.as_slice() else { return None };
    let model = translation_diagram(dgm.d(), dgm.k(), only.length);
    iso(dgm, &model, false).map(|_| only.length)
}
