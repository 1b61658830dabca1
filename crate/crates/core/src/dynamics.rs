//! Boundary dynamics read off a revealing pair.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::element::{make_revealing, ChainKind, Element, MaximalChain, TreePair};
use crate::error::{Error, Result};
use crate::tree::{Address, ClopenSet, TreeParams};

/// The eventually periodic boundary point `prefix · cycle^∞`.
///
/// The prefix always keeps its root digit, so it is never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPoint {
    prefix: Vec<u8>,
    cycle: Vec<u8>,
}

impl BoundaryPoint {
    pub fn new(params: &TreeParams, prefix: &Address, cycle: &[u8]) -> Result<Self> {
        if prefix.is_root() {
            return Err(Error::Invalid("a boundary point needs its root digit".into()));
        }
        if cycle.is_empty() {
            return Err(Error::Invalid("empty cycle".into()));
        }
        params.check(prefix)?;
        if let Some(&x) = cycle.iter().find(|&&x| x as usize >= params.d) {
            return Err(Error::Invalid(format!("cycle digit {x} out of range")));
        }
        Ok(Self::normalized(prefix.digits().to_vec(), cycle.to_vec()))
    }

    fn normalized(mut prefix: Vec<u8>, cycle: Vec<u8>) -> Self {
        let n = cycle.len();
        let period = (1..=n)
            .find(|&p| n % p == 0 && (p..n).all(|i| cycle[i] == cycle[i - p]))
            .unwrap_or(n);
        let mut cycle = cycle[..period].to_vec();
        while prefix.len() > 1 && prefix.last() == cycle.last() {
            prefix.pop();
            cycle.rotate_right(1);
        }
        BoundaryPoint { prefix, cycle }
    }

    pub fn prefix(&self) -> Address {
        Address::new(self.prefix.clone())
    }

    pub fn cycle(&self) -> &[u8] {
        &self.cycle
    }

    pub fn digit(&self, i: usize) -> u8 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The first `n` digits.
    pub fn truncate(&self, n: usize) -> Address {
        Address::new((0..n).map(|i| self.digit(i)).collect())
    }

    pub fn lies_below(&self, v: &Address) -> bool {
        v.digits().iter().enumerate().all(|(i, &x)| self.digit(i) == x)
    }

    pub fn parse(s: &str, params: &TreeParams) -> Result<Self> {
        let bad = || Error::format(1, format!("expected 'prefix/(cycle)', got '{s}'"));
        let (p, c) = s.split_once('/').ok_or_else(bad)?;
        let c = c.strip_prefix('(').and_then(|c| c.strip_suffix(')')).ok_or_else(bad)?;
        let prefix = Address::parse(p, params)?;
        let cycle = c
            .chars()
            .map(|ch| ch.to_digit(36).map(|x| x as u8).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        BoundaryPoint::new(params, &prefix, &cycle)
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = |v: &[u8]| -> String {
            v.iter()
                .map(|&x| std::char::from_digit(x as u32, 36).unwrap_or('?'))
                .collect()
        };
        write!(f, "{}/({})", digits(&self.prefix), digits(&self.cycle))
    }
}

impl Serialize for BoundaryPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum PointClass {
    Attracting { period: usize, length: usize },
    Repelling { period: usize, length: usize },
    Stable { period: usize },
    Wandering,
}

/// Classifies `p` with respect to `g`.
pub fn classify_point(g: &Element, p: &BoundaryPoint) -> Result<PointClass> {
    let pair = make_revealing(g)?;
    Ok(classify_in(&pair, p))
}

/// Classification against an already revealing pair of the element.
pub fn classify_in(pair: &TreePair, p: &BoundaryPoint) -> PointClass {
    let leaf = pair
        .domain()
        .leaves()
        .iter()
        .find(|l| p.lies_below(l))
        .expect("complete trees cover the boundary");
    let chains = pair.chains();
    let chain = chains
        .iter()
        .find(|c| c.vertices.contains(leaf))
        .expect("every leaf lies on a chain");
    match chain.kind {
        ChainKind::Periodic => PointClass::Stable {
            period: chain.vertices.len(),
        },
        ChainKind::Attractor | ChainKind::Repeller => {
            let s = chain.spine().expect("ends are comparable");
            let eta = BoundaryPoint::normalized(leaf.digits().to_vec(), s.clone());
            if &eta != p {
                PointClass::Wandering
            } else if chain.kind == ChainKind::Attractor {
                PointClass::Attracting {
                    period: chain.n(),
                    length: s.len(),
                }
            } else {
                PointClass::Repelling {
                    period: chain.n(),
                    length: s.len(),
                }
            }
        }
        ChainKind::Wandering | ChainKind::Other => PointClass::Wandering,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FixedPoint {
    pub point: BoundaryPoint,
    pub period: usize,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsReport {
    pub attractors: Vec<FixedPoint>,
    pub repellers: Vec<FixedPoint>,
    pub stable_region: ClopenSet,
    pub wandering_region_closure: ClopenSet,
    pub support_full: bool,
}

impl DynamicsReport {
    /// Sorted `(period, length)` pairs of the attractors.
    pub fn attractor_data(&self) -> Vec<(usize, usize)> {
        data(&self.attractors)
    }

    pub fn repeller_data(&self) -> Vec<(usize, usize)> {
        data(&self.repellers)
    }
}

fn data(v: &[FixedPoint]) -> Vec<(usize, usize)> {
    let mut out: Vec<_> = v.iter().map(|f| (f.period, f.length)).collect();
    out.sort();
    out
}

impl Serialize for DynamicsReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            attractors: &'a [FixedPoint],
            repellers: &'a [FixedPoint],
            stable_region: &'a [Address],
            wandering_region_closure: &'a [Address],
            support_full: bool,
        }
        Repr {
            attractors: &self.attractors,
            repellers: &self.repellers,
            stable_region: self.stable_region.balls(),
            wandering_region_closure: self.wandering_region_closure.balls(),
            support_full: self.support_full,
        }
        .serialize(s)
    }
}

fn fixed_point(params: &TreeParams, c: &MaximalChain) -> FixedPoint {
    let s = c.spine().expect("ends are comparable");
    let point = BoundaryPoint::new(params, c.first(), &s).expect("chain vertices are valid");
    FixedPoint {
        point,
        period: c.n(),
        length: s.len(),
    }
}

pub fn dynamics_report(g: &Element) -> Result<DynamicsReport> {
    Ok(report_in(&make_revealing(g)?))
}

pub fn report_in(pair: &TreePair) -> DynamicsReport {
    let params = pair.params();
    let chains = pair.chains();
    let mut attractors = Vec::new();
    let mut repellers = Vec::new();
    let mut periodic = Vec::new();
    let mut support_full = true;
    for c in &chains {
        match c.kind {
            ChainKind::Attractor => attractors.push(fixed_point(&params, c)),
            ChainKind::Repeller => repellers.push(fixed_point(&params, c)),
            ChainKind::Periodic => {
                if c.vertices.len() == 1 {
                    support_full = false;
                }
                periodic.extend(c.vertices.iter().cloned());
            }
            _ => {}
        }
    }
    attractors.sort();
    repellers.sort();
    let stable_region = ClopenSet::new(params, periodic).expect("leaves are valid balls");
    let wandering_region_closure = stable_region.complement();
    DynamicsReport {
        attractors,
        repellers,
        stable_region,
        wandering_region_closure,
        support_full,
    }
}

fn only_periodic(pair: &TreePair) -> bool {
    pair.chains().iter().all(|c| c.kind == ChainKind::Periodic)
}

pub fn is_elliptic(g: &Element) -> Result<bool> {
    Ok(only_periodic(&make_revealing(g)?))
}

pub fn is_hyperbolic(g: &Element) -> Result<bool> {
    if g.is_identity() {
        return Ok(false);
    }
    let pair = make_revealing(g)?;
    Ok(pair
        .chains()
        .iter()
        .all(|c| c.kind != ChainKind::Periodic || c.vertices.len() == 1))
}

/// No ball of the revealing pair is fixed pointwise.
pub fn support_is_full(g: &Element) -> Result<bool> {
    Ok(report_in(&make_revealing(g)?).support_full)
}

/// The factorization `g = g_e ∘ g_h` into an elliptic part supported on the
/// periodic balls and a hyperbolic part (or the identity) supported off them.
pub fn eh_decompose(g: &Element) -> Result<(Element, Element)> {
    let pair = make_revealing(g)?;
    let params = pair.params();
    let periodic: Vec<Address> = pair
        .chains()
        .into_iter()
        .filter(|c| c.kind == ChainKind::Periodic)
        .flat_map(|c| c.vertices)
        .collect();
    let union = pair.domain().union(pair.range())?;
    let elliptic = union
        .leaves()
        .iter()
        .map(|l| {
            let image = if periodic.contains(l) {
                pair.image(l).expect("periodic leaves are domain leaves").clone()
            } else {
                l.clone()
            };
            (l.clone(), image)
        })
        .collect();
    let hyperbolic = pair
        .map()
        .iter()
        .map(|(a, b)| {
            if periodic.contains(a) {
                (a.clone(), a.clone())
            } else {
                (a.clone(), b.clone())
            }
        })
        .collect();
    let g_e = Element::from_pairs(params, elliptic)?;
    let g_h = Element::from_pairs(params, hyperbolic)?;
    if g_e.compose(&g_h)? != *g {
        return Err(Error::Internal("elliptic and hyperbolic parts do not recompose".into()));
    }
    Ok((g_e, g_h))
}
