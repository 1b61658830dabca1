//! Orbital types and boundary orbital type invariants of elliptic elements.
//!
//! For a Higman–Thompson element acting as `[κ, T, T]`, every κ-cycle of
//! leaves spans a full d-ary forest on which all orbits have the cycle length.
//! Trimming a root of such a component replaces it by `d` components with the
//! same label, so the boundary class keeps the label set and each
//! multiplicity modulo `d - 1`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::element::{make_revealing, ChainKind, Element, TreePair};
use crate::error::{Error, Result};
use crate::tree::TreeParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConstantComponent {
    pub label: usize,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitalType {
    pub components: Vec<ConstantComponent>,
    #[serde(skip)]
    pub params: TreeParams,
    #[serde(skip)]
    pub source: Option<TreePair>,
}

impl OrbitalType {
    /// An orbital type given directly by `label -> multiplicity`.
    pub fn from_labels(params: TreeParams, labels: &BTreeMap<usize, usize>) -> Self {
        OrbitalType {
            components: labels
                .iter()
                .filter(|(_, &m)| m > 0)
                .map(|(&label, &multiplicity)| ConstantComponent {
                    label,
                    multiplicity,
                })
                .collect(),
            params,
            source: None,
        }
    }

    pub fn labels(&self) -> BTreeSet<usize> {
        self.components.iter().map(|c| c.label).collect()
    }

    /// Sum of label times multiplicity, the leaf count of the source tree.
    pub fn weight(&self) -> usize {
        self.components.iter().map(|c| c.label * c.multiplicity).sum()
    }

    /// Replaces one component of label `label` by its `d` children.
    pub fn trim(&self, label: usize) -> Option<OrbitalType> {
        let mut out = self.clone();
        let c = out.components.iter_mut().find(|c| c.label == label)?;
        c.multiplicity += self.params.d - 1;
        out.source = None;
        Some(out)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph orbital_type {\n");
        for (i, c) in self.components.iter().enumerate() {
            s.push_str(&format!(
                "  c{i} [shape=box, label=\"{}\u{d7}{}\"];\n",
                c.label, c.multiplicity
            ));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BotInvariant {
    pub label_set: BTreeSet<usize>,
    /// Multiplicity of each label modulo `d - 1`.
    pub residues: BTreeMap<usize, usize>,
}

pub fn orbital_type(g: &Element) -> Result<OrbitalType> {
    let pair = make_revealing(g)?;
    let mut counts = BTreeMap::new();
    for c in pair.chains() {
        if c.kind != ChainKind::Periodic {
            return Err(Error::NotElliptic);
        }
        *counts.entry(c.vertices.len()).or_insert(0) += 1;
    }
    let mut t = OrbitalType::from_labels(g.params(), &counts);
    t.source = Some(pair);
    Ok(t)
}

pub fn bot_invariant(t: &OrbitalType) -> BotInvariant {
    let m = t.params.d - 1;
    BotInvariant {
        label_set: t.labels(),
        residues: t
            .components
            .iter()
            .map(|c| (c.label, c.multiplicity % m))
            .collect(),
    }
}

pub fn elliptic_conjugate(g: &Element, h: &Element) -> Result<bool> {
    g.params().check_same(&h.params())?;
    Ok(bot_invariant(&orbital_type(g)?) == bot_invariant(&orbital_type(h)?))
}

/// Over `T_{2,2}`, an elliptic element is conjugate into `Aut(T)` exactly
/// when every orbit length is a power of two.
pub fn is_autt_conjugate_elliptic_t22(g: &Element) -> Result<bool> {
    let p = g.params();
    if p.d != 2 || p.k != 2 {
        return Err(Error::Invalid(format!("defined only for T(2,2), got {p}")));
    }
    Ok(orbital_type(g)?.labels().iter().all(|n| n.is_power_of_two()))
}

/// EXPERIMENTAL: the d-number test applied to every label. Every prime
/// factor must be at most `d` and `d²` must not divide the label. For `d = 2`
/// this rejects label 4, which tree automorphisms of `T_{2,2}` do realize, so
/// the predicate is kept out of every decision.
pub fn is_autt_orbital_type(t: &OrbitalType) -> bool {
    let d = t.params.d;
    t.labels().into_iter().all(|n| is_d_number(n, d))
}

fn is_d_number(n: usize, d: usize) -> bool {
    if n % (d * d) == 0 {
        return false;
    }
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        while rest % p == 0 {
            if p > d {
                return false;
            }
            rest /= p;
        }
        p += 1;
    }
    rest <= d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_numbers() {
        assert!(is_d_number(6, 3));
        assert!(!is_d_number(4, 2));
        assert!(is_d_number(1, 2));
        assert!(!is_d_number(5, 3));
        assert!(is_d_number(2, 2));
    }
}
