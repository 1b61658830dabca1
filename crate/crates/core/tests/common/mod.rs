#![allow(dead_code)]

use aaut::{Address, Element, TreePair, TreeParams};

pub fn p(d: usize, k: usize) -> TreeParams {
    TreeParams::new(d, k).unwrap()
}

pub fn a(s: &str) -> Address {
    Address::new(s.chars().map(|c| c.to_digit(36).unwrap() as u8).collect())
}

/// Parses `"0->00, 10->01, 11->1"`.
pub fn pairs(s: &str) -> Vec<(Address, Address)> {
    s.split(',')
        .map(|m| {
            let (x, y) = m.split_once("->").unwrap();
            (a(x.trim()), a(y.trim()))
        })
        .collect()
}

pub fn pair(params: TreeParams, s: &str) -> TreePair {
    TreePair::new(params, pairs(s)).unwrap()
}

pub fn el(params: TreeParams, s: &str) -> Element {
    Element::from_pairs(params, pairs(s)).unwrap()
}

pub fn x() -> Element {
    el(p(2, 2), "0->00, 10->01, 11->1")
}

pub fn swap() -> Element {
    el(p(2, 2), "0->1, 1->0")
}

pub fn double_swap() -> Element {
    el(p(2, 2), "00->01, 01->00, 10->11, 11->10")
}

pub fn id22() -> Element {
    Element::identity(p(2, 2))
}

/// Mixed element: a 2-cycle on the left half, hyperbolic on the right.
pub fn g1() -> Element {
    el(p(2, 2), "00->01, 01->00, 10->100, 110->101, 111->11")
}

/// `x` twisted below its attractor.
pub fn av() -> Element {
    el(p(2, 2), "00->001, 01->000, 10->01, 11->1")
}

use aaut::dynamics::{BoundaryPoint, PointClass};
use rand::Rng;

/// Exact image of an eventually periodic point.
pub fn image(g: &Element, pt: &BoundaryPoint) -> BoundaryPoint {
    let params = g.params();
    let deepest = g.pair().domain().leaves().iter().map(|l| l.depth()).max().unwrap();
    let depth = deepest.max(pt.prefix().depth());
    let head = g.act(&pt.truncate(depth)).unwrap();
    let c = pt.cycle().len();
    let tail: Vec<u8> = (0..c).map(|i| pt.digit(depth + i)).collect();
    BoundaryPoint::new(&params, &head, &tail).unwrap()
}

fn iterate(g: &Element, w: &Address, m: usize) -> Option<Address> {
    let mut w = w.clone();
    for _ in 0..m {
        w = g.act(&w).ok()?;
    }
    Some(w)
}

/// Classification by iteration: find the return time `m` of the point within
/// `steps`, then compare its depth-`depth` ball with the image under `g^m`.
pub fn empirical_class(g: &Element, pt: &BoundaryPoint, depth: usize, steps: usize) -> PointClass {
    let mut cur = pt.clone();
    let mut period = None;
    for i in 1..=steps {
        cur = image(g, &cur);
        if &cur == pt {
            period = Some(i);
            break;
        }
    }
    let Some(m) = period else { return PointClass::Wandering };
    let w = pt.truncate(depth);
    let forward = iterate(g, &w, m);
    let backward = iterate(&g.inverse(), &w, m);
    match (forward, backward) {
        (Some(v), _) if v == w => PointClass::Stable { period: m },
        (Some(v), _) if w.is_strict_prefix_of(&v) => PointClass::Attracting {
            period: m,
            length: v.depth() - w.depth(),
        },
        (_, Some(v)) if w.is_strict_prefix_of(&v) => PointClass::Repelling {
            period: m,
            length: v.depth() - w.depth(),
        },
        _ => PointClass::Wandering,
    }
}

pub fn random_point<R: Rng>(params: TreeParams, rng: &mut R) -> BoundaryPoint {
    let mut prefix = vec![rng.gen_range(0..params.k as u8)];
    for _ in 0..rng.gen_range(0..6) {
        prefix.push(rng.gen_range(0..params.d as u8));
    }
    let cycle: Vec<u8> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..params.d as u8)).collect();
    BoundaryPoint::new(&params, &Address::new(prefix), &cycle).unwrap()
}

/// A random permutation of the leaves of a random tree: always elliptic.
pub fn random_elliptic<R: Rng>(params: TreeParams, carets: usize, rng: &mut R) -> Element {
    use rand::seq::SliceRandom;
    let t = aaut::random::random_tree(params, carets, rng);
    let mut image = t.leaves().to_vec();
    image.shuffle(rng);
    Element::from_pairs(params, t.leaves().iter().cloned().zip(image).collect()).unwrap()
}
