//! Vertices, finite complete subtrees and clopen sets of the tree T_{d,k}.
//!
//! The root has `k` children and every other vertex has `d`. A vertex is a
//! digit sequence: the first digit is in `[0, k)`, the rest in `[0, d)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest arity the base-36 text codec can express.
pub const MAX_ARITY: usize = 36;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeParams {
    pub d: usize,
    pub k: usize,
}

impl TreeParams {
    pub fn new(d: usize, k: usize) -> Result<Self> {
        if d < 2 || k < 1 {
            return Err(Error::Invalid(format!("need d >= 2 and k >= 1, got d={d} k={k}")));
        }
        if d > MAX_ARITY || k > MAX_ARITY {
            return Err(Error::Invalid(format!("d and k are capped at {MAX_ARITY}")));
        }
        Ok(TreeParams { d, k })
    }

    /// Number of children of `v`.
    pub fn arity(&self, v: &Address) -> usize {
        if v.is_root() {
            self.k
        } else {
            self.d
        }
    }

    pub fn children(&self, v: &Address) -> Vec<Address> {
        (0..self.arity(v)).map(|i| v.child(i as u8)).collect()
    }

    pub fn check(&self, v: &Address) -> Result<()> {
        for (i, &x) in v.digits().iter().enumerate() {
            let bound = if i == 0 { self.k } else { self.d };
            if x as usize >= bound {
                return Err(Error::format(i + 1, format!("digit out of range in '{v}'")));
            }
        }
        Ok(())
    }

    /// Leaf count of a complete subtree with `carets` carets, the root caret included.
    pub fn leaves_for_carets(&self, carets: usize) -> usize {
        assert!(carets >= 1);
        self.k + (carets - 1) * (self.d - 1)
    }

    pub fn check_same(&self, other: &TreeParams) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParamMismatch(*self, *other))
        }
    }
}

impl fmt::Display for TreeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.d, self.k)
    }
}

type Digits = SmallVec<[u8; 24]>;

/// A vertex of the tree, ordered shortlex.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Address(Digits);

impl Address {
    pub fn root() -> Self {
        Address(Digits::new())
    }

    pub fn new(digits: Vec<u8>) -> Self {
        Address(Digits::from_vec(digits))
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: u8) -> Address {
        let mut v = self.0.clone();
        v.push(i);
        Address(v)
    }

    pub fn parent(&self) -> Option<Address> {
        if self.0.is_empty() {
            None
        } else {
            Some(Address(Digits::from_slice(&self.0[..self.0.len() - 1])))
        }
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// `self` equals `other` or is one of its ancestors.
    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_strict_prefix_of(&self, other: &Address) -> bool {
        self.0.len() < other.0.len() && other.0.starts_with(&self.0)
    }

    pub fn comparable(&self, other: &Address) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn concat(&self, suffix: &[u8]) -> Address {
        let mut v = self.0.clone();
        v.extend_from_slice(suffix);
        Address(v)
    }

    pub fn strip_prefix(&self, prefix: &Address) -> Option<&[u8]> {
        self.0.strip_prefix(prefix.0.as_slice())
    }

    /// Replaces the prefix `from` with `to`. Panics if `from` is not a prefix.
    pub fn rebase(&self, from: &Address, to: &Address) -> Address {
        let rest = self.strip_prefix(from).expect("rebase: not a prefix");
        to.concat(rest)
    }

    /// Every ancestor from the root down to the parent.
    pub fn proper_prefixes(&self) -> impl Iterator<Item = Address> + '_ {
        (0..self.0.len()).map(move |n| Address(Digits::from_slice(&self.0[..n])))
    }

    /// Parses base-36 text; the empty string is the root.
    pub fn parse(s: &str, params: &TreeParams) -> Result<Address> {
        let mut digits = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            let x = c
                .to_digit(36)
                .ok_or_else(|| Error::format(i + 1, format!("not a base-36 digit: '{c}'")))?;
            digits.push(x as u8);
        }
        let a = Address::new(digits);
        params.check(&a)?;
        Ok(a)
    }
}

impl Ord for Address {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Address {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.0 {
            let c = std::char::from_digit(x as u32, 36).unwrap_or('?');
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl Serialize for Address {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Children of the vertices in `internal` that are not themselves internal.
fn leaves_of_internal(params: &TreeParams, internal: &BTreeSet<Address>) -> Vec<Address> {
    let mut leaves = Vec::new();
    for v in internal {
        for c in params.children(v) {
            if !internal.contains(&c) {
                leaves.push(c);
            }
        }
    }
    leaves.sort();
    leaves
}

/// Checks the complete-subtree conditions on a set of leaves.
///
/// Digit errors are reported as `Err`; structural failures return `Ok(false)`.
pub fn is_complete(leaves: &[Address], params: &TreeParams) -> Result<bool> {
    for l in leaves {
        params.check(l)?;
    }
    Ok(completeness_problem(leaves, params).is_none())
}

fn completeness_problem(leaves: &[Address], params: &TreeParams) -> Option<String> {
    if leaves.is_empty() {
        return Some("no leaves".into());
    }
    let set: BTreeSet<&Address> = leaves.iter().collect();
    if set.len() != leaves.len() {
        return Some("duplicate leaf".into());
    }
    let mut internal = BTreeSet::new();
    for l in leaves {
        if l.is_root() {
            return Some("the root cannot be a leaf".into());
        }
        for p in l.proper_prefixes() {
            internal.insert(p);
        }
    }
    for l in leaves {
        if internal.contains(l) {
            return Some(format!("leaf '{l}' has a descendant leaf"));
        }
    }
    for v in &internal {
        for c in params.children(v) {
            if !internal.contains(&c) && !set.contains(&c) {
                return Some(format!("vertex '{v}' is missing child '{c}'"));
            }
        }
    }
    None
}

/// A finite complete subtree, stored as its shortlex-sorted leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompleteTree {
    params: TreeParams,
    leaves: Vec<Address>,
}

impl CompleteTree {
    pub fn new(params: TreeParams, mut leaves: Vec<Address>) -> Result<Self> {
        for l in &leaves {
            params.check(l)?;
        }
        leaves.sort();
        if let Some(problem) = completeness_problem(&leaves, &params) {
            return Err(Error::Invalid(format!("not a complete tree: {problem}")));
        }
        Ok(CompleteTree { params, leaves })
    }

    pub(crate) fn from_sorted_unchecked(params: TreeParams, leaves: Vec<Address>) -> Self {
        debug_assert!(completeness_problem(&leaves, &params).is_none());
        CompleteTree { params, leaves }
    }

    /// The root caret alone.
    pub fn trivial(params: TreeParams) -> Self {
        CompleteTree {
            params,
            leaves: params.children(&Address::root()),
        }
    }

    /// The tree whose internal vertices are exactly `internal`, which must be
    /// prefix closed and contain the root.
    pub fn from_internal(params: TreeParams, internal: &BTreeSet<Address>) -> Self {
        CompleteTree::from_sorted_unchecked(params, leaves_of_internal(&params, internal))
    }

    pub fn params(&self) -> TreeParams {
        self.params
    }

    pub fn leaves(&self) -> &[Address] {
        &self.leaves
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// Internal vertices, the root included.
    pub fn internal(&self) -> BTreeSet<Address> {
        let mut out = BTreeSet::new();
        for l in &self.leaves {
            for p in l.proper_prefixes() {
                out.insert(p);
            }
        }
        out
    }

    /// Number of carets, the root caret included.
    pub fn caret_count(&self) -> usize {
        (self.leaves.len() - self.params.k) / (self.params.d - 1) + 1
    }

    pub fn is_leaf(&self, v: &Address) -> bool {
        self.leaves.binary_search(v).is_ok()
    }

    /// `v` is a vertex of the tree: a leaf or an internal vertex.
    pub fn contains_vertex(&self, v: &Address) -> bool {
        self.is_leaf(v) || self.is_internal(v)
    }

    pub fn is_internal(&self, v: &Address) -> bool {
        self.leaves.iter().any(|l| v.is_strict_prefix_of(l))
    }

    /// The leaf that equals `w` or is an ancestor of it.
    pub fn leaf_above(&self, w: &Address) -> Option<&Address> {
        let mut p = Address::root();
        for &b in w.digits() {
            p.0.push(b);
            if let Ok(i) = self.leaves.binary_search(&p) {
                return Some(&self.leaves[i]);
            }
        }
        None
    }

    /// Every leaf of `other` lies in a leaf ball of `self`, i.e. `self` ⊆ `other`.
    pub fn is_subtree_of(&self, other: &CompleteTree) -> bool {
        other.leaves.iter().all(|l| self.leaf_above(l).is_some())
    }

    pub fn union(&self, other: &CompleteTree) -> Result<CompleteTree> {
        self.params.check_same(&other.params)?;
        let mut internal = self.internal();
        internal.extend(other.internal());
        Ok(CompleteTree::from_internal(self.params, &internal))
    }

    /// Caret subtraction `self ∖ other`, grouped into maximal subtrees.
    pub fn subtract(&self, other: &CompleteTree) -> Result<Vec<Subtree>> {
        self.params.check_same(&other.params)?;
        let mine = self.internal();
        let theirs = other.internal();
        let extra: BTreeSet<&Address> = mine.iter().filter(|v| !theirs.contains(*v)).collect();
        let mut out = Vec::new();
        for &r in &extra {
            let parent_extra = r.parent().is_some_and(|p| extra.contains(&p));
            if parent_extra {
                continue;
            }
            let leaves = self
                .leaves
                .iter()
                .filter(|l| r.is_strict_prefix_of(l))
                .cloned()
                .collect();
            out.push(Subtree {
                root: r.clone(),
                leaves,
            });
        }
        Ok(out)
    }

    /// Adds the caret below the leaf `leaf`.
    pub fn split_leaf(&self, leaf: &Address) -> Result<CompleteTree> {
        let i = self
            .leaves
            .binary_search(leaf)
            .map_err(|_| Error::Invalid(format!("'{leaf}' is not a leaf")))?;
        let mut leaves = self.leaves.clone();
        leaves.remove(i);
        leaves.extend(self.params.children(leaf));
        leaves.sort();
        Ok(CompleteTree::from_sorted_unchecked(self.params, leaves))
    }

    /// Adds the carets of `t` to the tree. The root of `t` must be a vertex.
    pub fn glue(&self, t: &Subtree) -> CompleteTree {
        let mut internal = self.internal();
        internal.extend(t.internal());
        for p in t.root.proper_prefixes() {
            internal.insert(p);
        }
        CompleteTree::from_internal(self.params, &internal)
    }

    /// Whitespace separated leaves.
    pub fn to_text(&self) -> String {
        self.leaves
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(text: &str, params: &TreeParams) -> Result<CompleteTree> {
        let leaves = text
            .split_whitespace()
            .map(|w| Address::parse(w, params))
            .collect::<Result<Vec<_>>>()?;
        CompleteTree::new(*params, leaves)
    }
}

impl fmt::Display for CompleteTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_text())
    }
}

/// A finite set of carets forming a tree below `root`, given by its leaves.
/// `leaves == [root]` is the empty tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subtree {
    pub root: Address,
    pub leaves: Vec<Address>,
}

impl Subtree {
    pub fn empty(root: Address) -> Self {
        Subtree {
            leaves: vec![root.clone()],
            root,
        }
    }

    pub fn caret(params: &TreeParams, root: Address) -> Self {
        let leaves = params.children(&root);
        Subtree { root, leaves }
    }

    pub fn internal(&self) -> BTreeSet<Address> {
        let mut out = BTreeSet::new();
        for l in &self.leaves {
            let rest = l.strip_prefix(&self.root).expect("leaf outside subtree");
            for n in 0..rest.len() {
                out.insert(self.root.concat(&rest[..n]));
            }
        }
        out
    }

    pub fn caret_count(&self) -> usize {
        self.internal().len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.len() == 1 && self.leaves[0] == self.root
    }

    /// The same shape hung below `new_root`.
    pub fn relocate(&self, new_root: &Address) -> Subtree {
        Subtree {
            root: new_root.clone(),
            leaves: self
                .leaves
                .iter()
                .map(|l| l.rebase(&self.root, new_root))
                .collect(),
        }
    }
}

/// A clopen subset of the boundary, as a normalized antichain of balls.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClopenSet {
    params: TreeParams,
    balls: Vec<Address>,
}

impl ClopenSet {
    pub fn new(params: TreeParams, balls: Vec<Address>) -> Result<Self> {
        for b in &balls {
            if b.is_root() {
                return Err(Error::Invalid("the root is not a ball".into()));
            }
            params.check(b)?;
        }
        Ok(ClopenSet {
            params,
            balls: normalize(&params, balls),
        })
    }

    pub fn empty(params: TreeParams) -> Self {
        ClopenSet {
            params,
            balls: Vec::new(),
        }
    }

    pub fn full(params: TreeParams) -> Self {
        ClopenSet {
            params,
            balls: params.children(&Address::root()),
        }
    }

    pub fn balls(&self) -> &[Address] {
        &self.balls
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.balls.len() == self.params.k && self.balls.iter().all(|b| b.depth() == 1)
    }

    /// Number of balls in any partition, modulo d-1. Always 0 when d = 2,
    /// where only emptiness and fullness carry information.
    pub fn ball_count_residue(&self) -> usize {
        self.balls.len() % (self.params.d - 1)
    }

    pub fn complement(&self) -> ClopenSet {
        if self.balls.is_empty() {
            return ClopenSet::full(self.params);
        }
        let mut internal = BTreeSet::new();
        for b in &self.balls {
            for p in b.proper_prefixes() {
                internal.insert(p);
            }
        }
        let balls: BTreeSet<&Address> = self.balls.iter().collect();
        let mut out = Vec::new();
        for v in &internal {
            for c in self.params.children(v) {
                if !internal.contains(&c) && !balls.contains(&c) {
                    out.push(c);
                }
            }
        }
        ClopenSet {
            params: self.params,
            balls: normalize(&self.params, out),
        }
    }

    pub fn contains_ball(&self, v: &Address) -> bool {
        self.balls.iter().any(|b| b.is_prefix_of(v))
    }
}

fn normalize(params: &TreeParams, balls: Vec<Address>) -> Vec<Address> {
    let mut set: BTreeSet<Address> = balls.into_iter().collect();
    let covered: Vec<Address> = set
        .iter()
        .filter(|b| b.proper_prefixes().any(|p| set.contains(&p)))
        .cloned()
        .collect();
    for b in covered {
        set.remove(&b);
    }
    loop {
        let mut contracted = None;
        for b in set.iter().rev() {
            let p = b.parent().expect("balls are not the root");
            if p.is_root() {
                continue;
            }
            if params.children(&p).iter().all(|c| set.contains(c)) {
                contracted = Some(p);
                break;
            }
        }
        match contracted {
            Some(p) => {
                for c in params.children(&p) {
                    set.remove(&c);
                }
                set.insert(p);
            }
            None => break,
        }
    }
    set.into_iter().collect()
}
