//! Tree pairs, canonical Higman–Thompson elements, maximal chains, rollings
//! and revealing pairs.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fmt;

use crate::error::{Error, Result};
use crate::tree::{Address, CompleteTree, Subtree, TreeParams};

/// Two complete subtrees with a bijection between their leaves. The induced
/// map sends `x·u` to `κ(x)·u` below every domain leaf `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePair {
    params: TreeParams,
    domain: CompleteTree,
    range: CompleteTree,
    map: BTreeMap<Address, Address>,
}

// The trees are determined by the map.
impl std::hash::Hash for TreePair {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.params.hash(state);
        self.map.hash(state);
    }
}

impl TreePair {
    pub fn new(params: TreeParams, pairs: Vec<(Address, Address)>) -> Result<Self> {
        let domain = CompleteTree::new(params, pairs.iter().map(|p| p.0.clone()).collect())
            .map_err(|e| Error::Invalid(format!("domain: {e}")))?;
        let range = CompleteTree::new(params, pairs.iter().map(|p| p.1.clone()).collect())
            .map_err(|e| Error::Invalid(format!("range: {e}")))?;
        let map: BTreeMap<Address, Address> = pairs.into_iter().collect();
        Ok(TreePair {
            params,
            domain,
            range,
            map,
        })
    }

    pub fn identity(params: TreeParams) -> Self {
        let t = CompleteTree::trivial(params);
        let map = t.leaves().iter().map(|l| (l.clone(), l.clone())).collect();
        TreePair {
            params,
            domain: t.clone(),
            range: t,
            map,
        }
    }

    fn from_map(params: TreeParams, map: BTreeMap<Address, Address>) -> Self {
        let domain = CompleteTree::from_sorted_unchecked(params, map.keys().cloned().collect());
        let mut r: Vec<Address> = map.values().cloned().collect();
        r.sort();
        let range = CompleteTree::from_sorted_unchecked(params, r);
        TreePair {
            params,
            domain,
            range,
            map,
        }
    }

    pub fn params(&self) -> TreeParams {
        self.params
    }

    pub fn domain(&self) -> &CompleteTree {
        &self.domain
    }

    pub fn range(&self) -> &CompleteTree {
        &self.range
    }

    pub fn map(&self) -> &BTreeMap<Address, Address> {
        &self.map
    }

    pub fn image(&self, leaf: &Address) -> Option<&Address> {
        self.map.get(leaf)
    }

    pub fn inverse(&self) -> TreePair {
        let map = self
            .map
            .iter()
            .map(|(a, b)| (b.clone(), a.clone()))
            .collect();
        TreePair {
            params: self.params,
            domain: self.range.clone(),
            range: self.domain.clone(),
            map,
        }
    }

    /// Image of a vertex at or below a domain leaf.
    pub fn act(&self, w: &Address) -> Result<Address> {
        let x = self
            .domain
            .leaf_above(w)
            .ok_or_else(|| Error::NeedsRefinement(w.clone()))?;
        Ok(w.rebase(x, &self.map[x]))
    }

    /// The same map written over a larger domain tree.
    pub fn refine(&self, new_domain: &CompleteTree) -> Result<TreePair> {
        self.params.check_same(&new_domain.params())?;
        if !self.domain.is_subtree_of(new_domain) {
            return Err(Error::Invalid(format!(
                "{new_domain} does not contain the domain {}",
                self.domain
            )));
        }
        let map = new_domain
            .leaves()
            .iter()
            .map(|w| Ok((w.clone(), self.act(w)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(TreePair::from_map(self.params, map))
    }

    /// The same map written over a larger range tree.
    pub fn refine_range(&self, new_range: &CompleteTree) -> Result<TreePair> {
        Ok(self.inverse().refine(new_range)?.inverse())
    }

    /// Contracts every caret whose leaves map in order onto a caret.
    pub fn canonicalize(&self) -> Element {
        Element {
            pair: TreePair::from_map(self.params, contract(self.map.clone(), self.params.d as u8)),
        }
    }

    /// The κ-orbits of leaves, kinds assigned by the chain definitions.
    pub fn chains(&self) -> Vec<MaximalChain> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for x0 in self.domain.leaves() {
            if self.range.is_leaf(x0) {
                continue;
            }
            let mut vertices = vec![x0.clone()];
            let mut cur = x0.clone();
            while let Some(next) = self.map.get(&cur) {
                seen.insert(cur.clone());
                vertices.push(next.clone());
                cur = next.clone();
            }
            out.push(self.classify_open(vertices));
        }
        for x0 in self.domain.leaves() {
            if seen.contains(x0) {
                continue;
            }
            let mut vertices = vec![x0.clone()];
            seen.insert(x0.clone());
            let mut cur = self.map[x0].clone();
            while &cur != x0 {
                seen.insert(cur.clone());
                vertices.push(cur.clone());
                cur = self.map[&cur].clone();
            }
            out.push(MaximalChain {
                vertices,
                kind: ChainKind::Periodic,
            });
        }
        out
    }

    fn classify_open(&self, vertices: Vec<Address>) -> MaximalChain {
        let x0 = &vertices[0];
        let xn = vertices.last().expect("non-empty chain");
        let kind = if x0.is_strict_prefix_of(xn) {
            ChainKind::Attractor
        } else if xn.is_strict_prefix_of(x0) {
            ChainKind::Repeller
        } else if !self.range.contains_vertex(x0) && !self.domain.contains_vertex(xn) {
            ChainKind::Wandering
        } else {
            ChainKind::Other
        };
        MaximalChain { vertices, kind }
    }

    /// Components of T1∖T2 without a repeller and of T2∖T1 without an attractor.
    pub fn fake_components(&self) -> (Vec<Subtree>, Vec<Subtree>) {
        let chains = self.chains();
        let repellers: BTreeSet<&Address> = chains
            .iter()
            .filter(|c| c.kind == ChainKind::Repeller)
            .map(|c| &c.vertices[0])
            .collect();
        let attractors: BTreeSet<&Address> = chains
            .iter()
            .filter(|c| c.kind == ChainKind::Attractor)
            .map(|c| c.last())
            .collect();
        let repelling = self
            .domain
            .subtract(&self.range)
            .expect("same params")
            .into_iter()
            .filter(|c| !c.leaves.iter().any(|l| repellers.contains(l)))
            .collect();
        let attracting = self
            .range
            .subtract(&self.domain)
            .expect("same params")
            .into_iter()
            .filter(|c| !c.leaves.iter().any(|l| attractors.contains(l)))
            .collect();
        (repelling, attracting)
    }

    /// Every T1∖T2 component holds a repeller and every T2∖T1 component an attractor.
    pub fn is_revealing(&self) -> bool {
        let (rep, att) = self.fake_components();
        rep.is_empty() && att.is_empty()
    }

    /// Glues copies of `tree` along `chain`. A forward rolling takes a tree
    /// rooted at the first vertex, a backward rolling one rooted at the last.
    pub fn roll(&self, chain: &MaximalChain, tree: &Subtree, direction: Direction) -> Result<TreePair> {
        let n = chain.vertices.len() - 1;
        let anchor = match direction {
            Direction::Forward => &chain.vertices[0],
            Direction::Backward => &chain.vertices[n],
        };
        if &tree.root != anchor {
            return Err(Error::Invalid(format!(
                "rolling tree is rooted at '{}', expected '{anchor}'",
                tree.root
            )));
        }
        if tree.is_empty() {
            return Ok(self.clone());
        }
        let mut domain = self.domain.clone();
        for x in &chain.vertices[..n] {
            domain = domain.glue(&tree.relocate(x));
        }
        self.refine(&domain)
    }
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (a, b)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}->{b}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainKind {
    Attractor,
    Repeller,
    Periodic,
    Wandering,
    Other,
}

/// A κ-orbit `(x_0, …, x_n)` of leaves. For periodic chains `κ(x_n) = x_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MaximalChain {
    pub vertices: Vec<Address>,
    pub kind: ChainKind,
}

impl MaximalChain {
    pub fn first(&self) -> &Address {
        &self.vertices[0]
    }

    pub fn last(&self) -> &Address {
        self.vertices.last().expect("non-empty chain")
    }

    /// `n`, the number of κ-steps from the first to the last vertex.
    pub fn n(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The attractor or repeller period, or the cycle length of a periodic chain.
    pub fn period(&self) -> Option<usize> {
        match self.kind {
            ChainKind::Attractor | ChainKind::Repeller => Some(self.n()),
            ChainKind::Periodic => Some(self.vertices.len()),
            _ => None,
        }
    }

    /// The digits separating the two ends when one descends from the other.
    pub fn spine(&self) -> Option<Vec<u8>> {
        let (a, b) = (self.first(), self.last());
        if let Some(s) = b.strip_prefix(a) {
            Some(s.to_vec())
        } else {
            a.strip_prefix(b).map(|s| s.to_vec())
        }
    }
}

/// The map of `g ∘ h` on a common refinement. Each leaf image `y` of `h`
/// either lies below a domain leaf of `g` or splits over the domain leaves of
/// `g` beneath it.
fn compose_map(g: &TreePair, h: &BTreeMap<Address, Address>) -> BTreeMap<Address, Address> {
    let d = g.params.d as u8;
    let mut map = BTreeMap::new();
    for (x, y) in h {
        if let Some(z) = g.domain.leaf_above(y) {
            map.insert(x.clone(), y.rebase(z, &g.map[z]));
            continue;
        }
        let mut stack = vec![Vec::new()];
        while let Some(u) = stack.pop() {
            let z = y.concat(&u);
            match g.map.get(&z) {
                Some(image) => {
                    map.insert(x.concat(&u), image.clone());
                }
                None => stack.extend((0..d).map(|i| {
                    let mut v = u.clone();
                    v.push(i);
                    v
                })),
            }
        }
    }
    map
}

/// Deepest carets first; a contraction can only enable its parent.
fn contract(mut map: BTreeMap<Address, Address>, d: u8) -> BTreeMap<Address, Address> {
    let mut heap: BinaryHeap<(usize, Address)> = map
        .keys()
        .filter_map(|x| x.parent())
        .filter(|p| !p.is_root())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|p| (p.depth(), p))
        .collect();
    while let Some((_, v)) = heap.pop() {
        let Some(y) = map.get(&v.child(0)).and_then(|f| f.parent()) else {
            continue;
        };
        if y.is_root() || !(0..d).all(|i| map.get(&v.child(i)) == Some(&y.child(i))) {
            continue;
        }
        for i in 0..d {
            map.remove(&v.child(i));
        }
        if let Some(p) = v.parent().filter(|p| !p.is_root()) {
            heap.push((p.depth(), p));
        }
        map.insert(v, y);
    }
    map
}

/// A Higman–Thompson element in canonical (fully contracted) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pair: TreePair,
}

impl Element {
    pub fn identity(params: TreeParams) -> Self {
        Element {
            pair: TreePair::identity(params),
        }
    }

    pub fn from_pairs(params: TreeParams, pairs: Vec<(Address, Address)>) -> Result<Self> {
        Ok(TreePair::new(params, pairs)?.canonicalize())
    }

    pub fn pair(&self) -> &TreePair {
        &self.pair
    }

    pub fn params(&self) -> TreeParams {
        self.pair.params
    }

    pub fn is_identity(&self) -> bool {
        self.pair.map.iter().all(|(a, b)| a == b)
    }

    pub fn inverse(&self) -> Element {
        self.pair.inverse().canonicalize()
    }

    /// `self ∘ h`: apply `h` first.
    pub fn compose(&self, h: &Element) -> Result<Element> {
        self.params().check_same(&h.params())?;
        Ok(TreePair::from_map(self.params(), compose_map(&self.pair, &h.pair.map)).canonicalize())
    }

    /// `a ∘ self ∘ a⁻¹`.
    pub fn conjugate_by(&self, a: &Element) -> Result<Element> {
        self.conjugate_with(a, &a.inverse())
    }

    /// `a ∘ self ∘ a⁻¹` with the inverse supplied; one contraction at the end.
    pub fn conjugate_with(&self, a: &Element, a_inv: &Element) -> Result<Element> {
        self.params().check_same(&a.params())?;
        let inner = compose_map(&self.pair, &a_inv.pair.map);
        let outer = compose_map(&a.pair, &inner);
        Ok(Element {
            pair: TreePair::from_map(self.params(), contract(outer, self.params().d as u8)),
        })
    }

    pub fn pow(&self, n: i64) -> Element {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Element::identity(self.params());
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base).expect("same params");
        }
        acc
    }

    pub fn act(&self, w: &Address) -> Result<Address> {
        self.pair.act(w)
    }

    pub fn refine(&self, new_domain: &CompleteTree) -> Result<TreePair> {
        self.pair.refine(new_domain)
    }

    /// Number of carets of the canonical domain, the root caret included.
    pub fn caret_count(&self) -> usize {
        self.pair.domain.caret_count()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.pair.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Attracting,
    Repelling,
}

const ROLL_LIMIT: usize = 10_000;

/// A revealing pair of `g` containing its canonical pair.
///
/// Fake attracting components are rolled forward and fake repelling ones
/// backward. Within a phase the measure (carets in fake components, number
/// of fake components) must drop lexicographically with every rolling; if it
/// does not, the phases are run in the other order.
pub fn make_revealing(g: &Element) -> Result<TreePair> {
    make_revealing_from(&g.pair)
}

/// Like [`make_revealing`], starting from an arbitrary tree pair of the element.
pub fn make_revealing_from(start: &TreePair) -> Result<TreePair> {
    let g = start.canonicalize();
    let orders = [
        [Phase::Attracting, Phase::Repelling],
        [Phase::Repelling, Phase::Attracting],
    ];
    let mut last_err = None;
    for order in orders {
        match revealing_attempt(start, order) {
            Ok(p) => {
                if p.canonicalize() != g {
                    return Err(Error::Internal("rolling changed the element".into()));
                }
                return Ok(p);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Internal("no revealing pair".into())))
}

fn revealing_attempt(start: &TreePair, order: [Phase; 2]) -> Result<TreePair> {
    let mut p = start.clone();
    let mut rolls = 0;
    while !p.is_revealing() {
        for phase in order {
            let mut last: Option<(usize, usize)> = None;
            loop {
                let (rep, att) = p.fake_components();
                let fakes = match phase {
                    Phase::Attracting => att,
                    Phase::Repelling => rep,
                };
                let Some(target) = fakes.first() else { break };
                let carets: usize = fakes.iter().map(|c| c.caret_count()).sum();
                let measure = (carets, fakes.len());
                if last.is_some_and(|m| measure >= m) {
                    return Err(Error::Internal(format!(
                        "termination measure did not decrease: {measure:?} after {last:?}"
                    )));
                }
                last = Some(measure);
                rolls += 1;
                if rolls > ROLL_LIMIT {
                    return Err(Error::Internal("rolling limit exceeded".into()));
                }
                let chains = p.chains();
                p = match phase {
                    Phase::Attracting => {
                        let chain = chains
                            .iter()
                            .find(|c| c.first() == &target.root)
                            .ok_or_else(|| Error::Internal("no chain at fake component".into()))?;
                        p.roll(chain, target, Direction::Forward)?
                    }
                    Phase::Repelling => {
                        let chain = chains
                            .iter()
                            .find(|c| c.kind != ChainKind::Periodic && c.last() == &target.root)
                            .ok_or_else(|| Error::Internal("no chain at fake component".into()))?;
                        p.roll(chain, target, Direction::Backward)?
                    }
                };
            }
        }
    }
    Ok(p)
}
