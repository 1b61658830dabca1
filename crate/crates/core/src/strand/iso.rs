//! Diagram isomorphism, with or without the rotation system.
//!
//! Vertices are matched by backtracking in breadth-first order, pruned by
//! colour refinement. Along the way every vertex gets a potential `p` with
//! `γ'(F(e)) - γ(e) = p(to) - p(from)`, which is exactly the condition that
//! the two cutting classes agree under the map.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::{EdgeId, StrandDiagram, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoMap {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    /// Index of the matching free loop of the second diagram.
    pub free_loops: Vec<usize>,
}

pub fn iso(a: &StrandDiagram, b: &StrandDiagram, respect_rotation: bool) -> Option<IsoMap> {
    let a = dense(a);
    let b = dense(b);
    if a.d != b.d || a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let mut la = a.free_loops.clone();
    let mut lb = b.free_loops.clone();
    la.sort();
    lb.sort();
    if la != lb {
        return None;
    }
    let (ca, cb) = colours(&a, &b, respect_rotation);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let (order, parent) = bfs_order(&a);
    let mut s = Search {
        a: &a,
        b: &b,
        rot: respect_rotation,
        ca,
        cb,
        order,
        parent,
        phi: vec![None; a.vertex_count()],
        used: vec![false; b.vertex_count()],
        pot: vec![0; a.vertex_count()],
        result: None,
    };
    s.run(0);
    let mut map = s.result?;
    map.free_loops = match_free_loops(&a.free_loops, &b.free_loops);
    debug_assert!(verify_iso(&a, &b, &map, respect_rotation));
    Some(map)
}

fn dense(d: &StrandDiagram) -> StrandDiagram {
    let mut out = d.clone();
    out.compact();
    out
}

fn match_free_loops(a: &[i64], b: &[i64]) -> Vec<usize> {
    let mut ib: Vec<usize> = (0..b.len()).collect();
    ib.sort_by_key(|&i| b[i]);
    let mut ia: Vec<usize> = (0..a.len()).collect();
    ia.sort_by_key(|&i| a[i]);
    let mut out = vec![0; a.len()];
    for (x, y) in ia.into_iter().zip(ib) {
        out[x] = y;
    }
    out
}

/// Colour refinement on the disjoint union, so colours are comparable.
fn colours(a: &StrandDiagram, b: &StrandDiagram, rot: bool) -> (Vec<usize>, Vec<usize>) {
    let init = |d: &StrandDiagram| -> Vec<usize> { d.vertex_ids().map(|v| d.vertex(v).kind as usize).collect() };
    let mut ca = init(a);
    let mut cb = init(b);
    let mut classes = 0;
    loop {
        let sig = |d: &StrandDiagram, c: &[usize]| -> Vec<(usize, Vec<usize>, Vec<usize>)> {
            d.vertex_ids()
                .map(|v| {
                    let x = d.vertex(v);
                    let mut ins: Vec<usize> = x.inputs.iter().map(|&e| c[d.edge(e).from]).collect();
                    let mut outs: Vec<usize> = x.outputs.iter().map(|&e| c[d.edge(e).to]).collect();
                    if !rot {
                        ins.sort();
                        outs.sort();
                    }
                    (c[v], ins, outs)
                })
                .collect()
        };
        let (xa, xb) = (sig(a, &ca), sig(b, &cb));
        let mut table = BTreeMap::new();
        for s in xa.iter().chain(&xb) {
            let n = table.len();
            table.entry(s.clone()).or_insert(n);
        }
        ca = xa.iter().map(|s| table[s]).collect();
        cb = xb.iter().map(|s| table[s]).collect();
        if table.len() == classes {
            break;
        }
        classes = table.len();
    }
    (ca, cb)
}

fn bfs_order(a: &StrandDiagram) -> (Vec<VertexId>, Vec<Option<(EdgeId, VertexId)>>) {
    let n = a.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for (e, w) in a.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((e, v));
                    queue.push_back(w);
                }
            }
        }
    }
    (order, parent)
}

struct Search<'a> {
    a: &'a StrandDiagram,
    b: &'a StrandDiagram,
    rot: bool,
    ca: Vec<usize>,
    cb: Vec<usize>,
    order: Vec<VertexId>,
    parent: Vec<Option<(EdgeId, VertexId)>>,
    phi: Vec<Option<VertexId>>,
    used: Vec<bool>,
    pot: Vec<i64>,
    result: Option<IsoMap>,
}

/// The edge at the same place in `w`'s lists that `e` has in `v`'s.
fn same_slot(a: &StrandDiagram, b: &StrandDiagram, v: VertexId, w: VertexId, e: EdgeId) -> Vec<EdgeId> {
    let (x, y) = (a.vertex(v), b.vertex(w));
    let mut out = Vec::new();
    if let Some(i) = x.outputs.iter().position(|&f| f == e) {
        out.push(y.outputs[i]);
    }
    if let Some(i) = x.inputs.iter().position(|&f| f == e) {
        out.push(y.inputs[i]);
    }
    out
}

impl Search<'_> {
    fn run(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            let map = self.edge_map();
            if let Some(map) = map {
                self.result = Some(map);
                return true;
            }
            return false;
        }
        let v = self.order[i];
        for w in self.candidates(v) {
            self.phi[v] = Some(w);
            self.used[w] = true;
            if self.consistent(v, w) && self.run(i + 1) {
                return true;
            }
            self.phi[v] = None;
            self.used[w] = false;
        }
        false
    }

    fn candidates(&self, v: VertexId) -> Vec<VertexId> {
        let ok = |w: VertexId| !self.used[w] && self.cb[w] == self.ca[v];
        let Some((pe, u)) = self.parent[v] else {
            return (0..self.b.vertex_count()).filter(|&w| ok(w)).collect();
        };
        let fu = self.phi[u].expect("parent is mapped first");
        let forward = self.a.edge(pe).from == u;
        let mut out: Vec<VertexId> = if self.rot {
            same_slot(self.a, self.b, u, fu, pe)
                .into_iter()
                .map(|f| if forward { self.b.edge(f).to } else { self.b.edge(f).from })
                .collect()
        } else {
            self.b
                .incident(fu)
                .into_iter()
                .filter(|&(f, _)| (self.b.edge(f).from == fu) == forward)
                .map(|(_, w)| w)
                .collect()
        };
        out.sort();
        out.dedup();
        out.retain(|&w| ok(w));
        out
    }

    fn consistent(&mut self, v: VertexId, w: VertexId) -> bool {
        let (a, b) = (self.a, self.b);
        let mapped_a = a.incident(v).into_iter().filter(|&(_, u)| self.phi[u].is_some()).count();
        let mapped_b = b.incident(w).into_iter().filter(|&(_, x)| self.used[x]).count();
        if mapped_a != mapped_b {
            return false;
        }
        if self.rot {
            self.consistent_rot(v, w)
        } else {
            self.consistent_free(v, w)
        }
    }

    fn consistent_rot(&mut self, v: VertexId, w: VertexId) -> bool {
        let (a, b) = (self.a, self.b);
        let image = |s: &Self, e: EdgeId| -> Option<EdgeId> {
            let x = a.edge(e);
            let mut all = Vec::new();
            for end in [x.from, x.to] {
                if let Some(fe) = s.phi[end] {
                    all.extend(same_slot(a, b, end, fe, e));
                }
            }
            let f = *all.first()?;
            all.iter().all(|&g| g == f).then_some(f)
        };
        if let Some((pe, u)) = self.parent[v] {
            let Some(f) = image(self, pe) else { return false };
            let delta = b.edge(f).gamma - a.edge(pe).gamma;
            self.pot[v] = if a.edge(pe).from == u { self.pot[u] + delta } else { self.pot[u] - delta };
        } else {
            self.pot[v] = 0;
        }
        for (e, u) in a.incident(v) {
            let Some(fu) = self.phi[u] else { continue };
            let Some(f) = image(self, e) else { return false };
            let (x, y) = (a.edge(e), b.edge(f));
            let (fx_from, fx_to) = if x.from == v { (w, fu) } else { (fu, w) };
            if y.from != fx_from || y.to != fx_to {
                return false;
            }
            if y.gamma - x.gamma != self.pot[x.to] - self.pot[x.from] {
                return false;
            }
        }
        true
    }

    fn consistent_free(&mut self, v: VertexId, w: VertexId) -> bool {
        let (a, b) = (self.a, self.b);
        let group = |d: &StrandDiagram, x: VertexId, y: VertexId| -> Vec<i64> {
            let mut g: Vec<i64> = d
                .vertex(x)
                .outputs
                .iter()
                .map(|&e| d.edge(e))
                .filter(|e| e.to == y)
                .map(|e| e.gamma)
                .collect();
            g.sort();
            g
        };
        // Constant offset between the sorted weight lists, if there is one.
        let offset = |ga: &[i64], gb: &[i64]| -> Option<Option<i64>> {
            if ga.len() != gb.len() {
                return None;
            }
            let Some((x, y)) = ga.first().zip(gb.first()) else {
                return Some(None);
            };
            let c = y - x;
            ga.iter().zip(gb).all(|(x, y)| y - x == c).then_some(Some(c))
        };
        if let Some((pe, u)) = self.parent[v] {
            let fu = self.phi[u].expect("mapped");
            let forward = a.edge(pe).from == u;
            let (ga, gb) = if forward {
                (group(a, u, v), group(b, fu, w))
            } else {
                (group(a, v, u), group(b, w, fu))
            };
            let Some(Some(c)) = offset(&ga, &gb) else { return false };
            self.pot[v] = if forward { self.pot[u] + c } else { self.pot[u] - c };
        } else {
            self.pot[v] = 0;
        }
        let mut neighbours: Vec<VertexId> = a.incident(v).into_iter().map(|(_, u)| u).filter(|&u| self.phi[u].is_some()).collect();
        neighbours.sort();
        neighbours.dedup();
        for u in neighbours {
            let fu = self.phi[u].expect("mapped");
            for (x, y, fx, fy) in [(v, u, w, fu), (u, v, fu, w)] {
                match offset(&group(a, x, y), &group(b, fx, fy)) {
                    None => return false,
                    Some(None) => {}
                    Some(Some(c)) => {
                        if c != self.pot[y] - self.pot[x] {
                            return false;
                        }
                    }
                }
                if u == v {
                    break;
                }
            }
        }
        true
    }

    fn edge_map(&self) -> Option<IsoMap> {
        let (a, b) = (self.a, self.b);
        let phi: Vec<VertexId> = self.phi.iter().map(|x| x.expect("complete")).collect();
        let mut edges = vec![usize::MAX; a.edge_count()];
        if self.rot {
            for e in a.edge_ids() {
                let x = a.edge(e);
                edges[e] = same_slot(a, b, x.from, phi[x.from], e)[0];
            }
        } else {
            let mut groups: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
            for e in a.edge_ids() {
                let x = a.edge(e);
                groups.entry((x.from, x.to)).or_default().push(e);
            }
            let mut taken = BTreeMap::new();
            for f in b.edge_ids() {
                let y = b.edge(f);
                taken.entry((y.from, y.to)).or_insert_with(Vec::new).push(f);
            }
            for ((x, y), mut ga) in groups {
                let mut gb = taken.get(&(phi[x], phi[y]))?.clone();
                ga.sort_by_key(|&e| (a.edge(e).gamma, e));
                gb.sort_by_key(|&f| (b.edge(f).gamma, f));
                for (e, f) in ga.into_iter().zip(gb) {
                    edges[e] = f;
                }
            }
        }
        let map = IsoMap {
            vertices: phi,
            edges,
            free_loops: match_free_loops(&a.free_loops, &b.free_loops),
        };
        verify_iso(a, b, &map, self.rot).then_some(map)
    }
}

/// Checks a proposed isomorphism from scratch.
pub fn verify_iso(a: &StrandDiagram, b: &StrandDiagram, map: &IsoMap, respect_rotation: bool) -> bool {
    let nv = a.vertex_count();
    let ne = a.edge_count();
    if nv != b.vertex_count() || ne != b.edge_count() || map.vertices.len() != nv || map.edges.len() != ne {
        return false;
    }
    if !is_permutation(&map.vertices, nv) || !is_permutation(&map.edges, ne) {
        return false;
    }
    if !is_permutation(&map.free_loops, b.free_loops.len()) || a.free_loops.len() != b.free_loops.len() {
        return false;
    }
    if a.free_loops.iter().enumerate().any(|(i, &x)| b.free_loops[map.free_loops[i]] != x) {
        return false;
    }
    for (v, &w) in map.vertices.iter().enumerate() {
        let (x, y) = (a.vertex(v), b.vertex(w));
        if x.kind != y.kind || x.inputs.len() != y.inputs.len() || x.outputs.len() != y.outputs.len() {
            return false;
        }
        if respect_rotation {
            let same = |p: &[EdgeId], q: &[EdgeId]| p.iter().zip(q).all(|(&e, &f)| map.edges[e] == f);
            if !same(&x.inputs, &y.inputs) || !same(&x.outputs, &y.outputs) {
                return false;
            }
        }
    }
    for (e, &f) in map.edges.iter().enumerate() {
        let (x, y) = (a.edge(e), b.edge(f));
        if y.from != map.vertices[x.from] || y.to != map.vertices[x.to] {
            return false;
        }
    }
    // Potentials along a spanning forest, then every edge.
    let delta = |e: EdgeId| b.edge(map.edges[e]).gamma - a.edge(e).gamma;
    let mut pot: Vec<Option<i64>> = vec![None; nv];
    for s in 0..nv {
        if pot[s].is_some() {
            continue;
        }
        pot[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let pv = pot[v].expect("set");
            for (e, w) in a.incident(v) {
                if pot[w].is_none() {
                    let forward = a.edge(e).from == v;
                    pot[w] = Some(if forward { pv + delta(e) } else { pv - delta(e) });
                    queue.push_back(w);
                }
            }
        }
    }
    a.edge_ids().all(|e| {
        let x = a.edge(e);
        delta(e) == pot[x.to].expect("set") - pot[x.from].expect("set")
    })
}

fn is_permutation(v: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    v.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}
