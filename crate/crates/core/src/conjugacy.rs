//! Conjugacy decisions in `V_{d,k}` and in the almost automorphism group.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::dynamics::{eh_decompose, is_hyperbolic, support_is_full};
use crate::element::{make_revealing, Element, TreePair};
use crate::elliptic::{bot_invariant, orbital_type, BotInvariant};
use crate::error::{Error, Result};
use crate::format::write_element;
use crate::strand::{basic_diagram, iso, reduce, star_reduce, IsoMap, StrandDiagram};
use crate::tree::{CompleteTree, TreeParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Arena {
    V,
    AAut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// The compared diagrams; `mapping` is absent when they are not isomorphic.
    DiagramIso { mapping: Option<IsoMap> },
    /// Reduced diagrams agree only after forgetting the rotation system.
    RotationMismatch { mapping: IsoMap },
    /// Reduced diagrams differ even without the rotation system.
    DiagramMismatch,
    /// Every invariant of the combined decision agrees.
    Invariants {
        label_set: BTreeSet<usize>,
        residues: BTreeMap<usize, usize>,
        hyperbolic: Option<IsoMap>,
        support_full: bool,
    },
    EllipticLabelSet { left: BTreeSet<usize>, right: BTreeSet<usize> },
    EllipticResidues {
        left: BTreeMap<usize, usize>,
        right: BTreeMap<usize, usize>,
    },
    SupportParity { left: bool, right: bool },
}

impl Evidence {
    pub fn kind(&self) -> &'static str {
        match self {
            Evidence::DiagramIso { .. } => "diagram-iso",
            Evidence::RotationMismatch { .. } => "rotation-mismatch",
            Evidence::DiagramMismatch => "diagram-mismatch",
            Evidence::Invariants { .. } => "invariants",
            Evidence::EllipticLabelSet { .. } => "elliptic-label-set",
            Evidence::EllipticResidues { .. } => "elliptic-residues",
            Evidence::SupportParity { .. } => "support-parity",
        }
    }
}

/// A conjugator `a` with `a ∘ g ∘ a⁻¹ = h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub conjugator: Element,
}

impl Witness {
    pub fn check(&self, g: &Element, h: &Element) -> bool {
        g.conjugate_by(&self.conjugator).is_ok_and(|x| &x == h)
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&write_element(&self.conjugator))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub conjugate: bool,
    pub arena: Arena,
    pub evidence: Evidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// The reduced diagram of the canonical pair.
pub fn v_diagram(g: &Element) -> StrandDiagram {
    reduce(&basic_diagram(g.pair()))
}

/// The *-reduced diagram of a revealing pair.
pub fn hyperbolic_diagram(g: &Element) -> Result<StrandDiagram> {
    Ok(star_reduce(&basic_diagram(&make_revealing(g)?)))
}

pub fn conjugate_in_v(g: &Element, h: &Element) -> Result<Verdict> {
    g.params().check_same(&h.params())?;
    let (a, b) = (v_diagram(g), v_diagram(h));
    let evidence = match iso(&a, &b, true) {
        Some(m) => Evidence::DiagramIso { mapping: Some(m) },
        None => match iso(&a, &b, false) {
            Some(m) => Evidence::RotationMismatch { mapping: m },
            None => Evidence::DiagramMismatch,
        },
    };
    Ok(Verdict {
        conjugate: matches!(evidence, Evidence::DiagramIso { .. }),
        arena: Arena::V,
        evidence,
        witness: None,
    })
}

pub fn conjugate_hyperbolic(g: &Element, h: &Element) -> Result<Verdict> {
    g.params().check_same(&h.params())?;
    if !is_hyperbolic(g)? || !is_hyperbolic(h)? {
        return Err(Error::NotHyperbolic);
    }
    let mapping = iso(&hyperbolic_diagram(g)?, &hyperbolic_diagram(h)?, false);
    Ok(Verdict {
        conjugate: mapping.is_some(),
        arena: Arena::AAut,
        evidence: Evidence::DiagramIso { mapping },
        witness: None,
    })
}

/// Everything the full decision needs from one element.
#[derive(Debug, Clone)]
pub struct ConjugacyProfile {
    params: TreeParams,
    elliptic: BotInvariant,
    /// *-reduced diagram of the hyperbolic factor, absent when that factor is trivial.
    hyperbolic: Option<StrandDiagram>,
    support_full: bool,
}

pub fn conjugacy_profile(g: &Element) -> Result<ConjugacyProfile> {
    let (e, h) = eh_decompose(g)?;
    Ok(ConjugacyProfile {
        params: g.params(),
        elliptic: bot_invariant(&orbital_type(&e)?),
        hyperbolic: if h.is_identity() { None } else { Some(hyperbolic_diagram(&h)?) },
        support_full: support_is_full(g)?,
    })
}

/// Conjugacy in the full almost automorphism group: elliptic parts by their
/// boundary orbital types, hyperbolic parts by their *-reduced diagrams up to
/// rotation, and agreement on whether the support is everything.
pub fn conjugate(g: &Element, h: &Element) -> Result<Verdict> {
    g.params().check_same(&h.params())?;
    compare_profiles(&conjugacy_profile(g)?, &conjugacy_profile(h)?)
}

/// [`conjugate`] on precomputed profiles.
pub fn compare_profiles(g: &ConjugacyProfile, h: &ConjugacyProfile) -> Result<Verdict> {
    g.params.check_same(&h.params)?;
    let no = |evidence| Verdict {
        conjugate: false,
        arena: Arena::AAut,
        evidence,
        witness: None,
    };
    let (bg, bh) = (&g.elliptic, &h.elliptic);
    if bg.label_set != bh.label_set {
        return Ok(no(Evidence::EllipticLabelSet {
            left: bg.label_set.clone(),
            right: bh.label_set.clone(),
        }));
    }
    if bg.residues != bh.residues {
        return Ok(no(Evidence::EllipticResidues {
            left: bg.residues.clone(),
            right: bh.residues.clone(),
        }));
    }
    let hyperbolic = match (&g.hyperbolic, &h.hyperbolic) {
        (None, None) => None,
        (Some(a), Some(b)) => match iso(a, b, false) {
            Some(m) => Some(m),
            None => return Ok(no(Evidence::DiagramIso { mapping: None })),
        },
        _ => return Ok(no(Evidence::DiagramIso { mapping: None })),
    };
    if g.support_full != h.support_full {
        return Ok(no(Evidence::SupportParity {
            left: g.support_full,
            right: h.support_full,
        }));
    }
    Ok(Verdict {
        conjugate: true,
        arena: Arena::AAut,
        evidence: Evidence::Invariants {
            label_set: bg.label_set.clone(),
            residues: bg.residues.clone(),
            hyperbolic,
            support_full: g.support_full,
        },
        witness: None,
    })
}

pub fn has_open_conjugacy_class(g: &Element) -> Result<bool> {
    Ok(is_hyperbolic(g)? && support_is_full(g)?)
}

/// Every complete tree with exactly `carets` carets, shortlex by leaf list.
pub fn trees_with_carets(params: TreeParams, carets: usize) -> Vec<CompleteTree> {
    let mut level: BTreeSet<Vec<crate::tree::Address>> = BTreeSet::new();
    level.insert(CompleteTree::trivial(params).leaves().to_vec());
    for _ in 1..carets {
        let mut next = BTreeSet::new();
        for leaves in &level {
            let t = CompleteTree::from_sorted_unchecked(params, leaves.clone());
            for l in leaves {
                next.insert(t.split_leaf(l).expect("a leaf").leaves().to_vec());
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|l| CompleteTree::from_sorted_unchecked(params, l))
        .collect()
}

/// Every element whose canonical domain has at most `max_carets` carets,
/// ordered by length and then lexicographically on the serialized text.
pub fn enumerate_elements(params: TreeParams, max_carets: usize) -> Vec<Element> {
    let mut seen = HashSet::new();
    for c in 1..=max_carets {
        let trees = trees_with_carets(params, c);
        for dom in &trees {
            for ran in &trees {
                for perm in ran.leaves().iter().permutations(ran.leaf_count()) {
                    let pairs = dom.leaves().iter().cloned().zip(perm.into_iter().cloned()).collect();
                    let e = TreePair::new(params, pairs).expect("complete trees").canonicalize();
                    seen.insert(e);
                }
            }
        }
    }
    let mut out: Vec<(String, Element)> = seen.into_iter().map(|e| (write_element(&e), e)).collect();
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out.into_iter().map(|x| x.1).collect()
}

/// Exhaustive search over a fixed candidate list.
pub struct ConjugatorSearch {
    candidates: Vec<Element>,
    inverses: Vec<Element>,
}

impl ConjugatorSearch {
    pub fn new(params: TreeParams, max_carets: usize) -> Self {
        let candidates = enumerate_elements(params, max_carets);
        let inverses = candidates.iter().map(Element::inverse).collect();
        ConjugatorSearch { candidates, inverses }
    }

    pub fn candidates(&self) -> &[Element] {
        &self.candidates
    }

    fn conjugate(&self, i: usize, g: &Element) -> Result<Element> {
        g.conjugate_with(&self.candidates[i], &self.inverses[i])
    }

    pub fn find(&self, g: &Element, h: &Element) -> Result<Option<Witness>> {
        g.params().check_same(&h.params())?;
        for i in 0..self.candidates.len() {
            if &self.conjugate(i, g)? == h {
                return Ok(Some(Witness {
                    conjugator: self.candidates[i].clone(),
                }));
            }
        }
        Ok(None)
    }

    /// Every `a g a⁻¹` over the candidates, mapped to the index of the first
    /// candidate producing it. `find(g, h)` returns that candidate.
    pub fn orbit(&self, g: &Element) -> Result<HashMap<Element, usize>> {
        let mut out = HashMap::new();
        for i in 0..self.candidates.len() {
            out.entry(self.conjugate(i, g)?).or_insert(i);
        }
        Ok(out)
    }
}

/// The first conjugator with at most `max_carets` domain carets.
pub fn brute_force_conjugator(g: &Element, h: &Element, max_carets: usize) -> Result<Option<Witness>> {
    if max_carets == 0 {
        return Err(Error::Invalid("max_carets must be at least 1".into()));
    }
    ConjugatorSearch::new(g.params(), max_carets).find(g, h)
}
