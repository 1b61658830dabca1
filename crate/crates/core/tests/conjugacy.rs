mod common;

use aaut::conjugacy::*;
use aaut::random::seeded_element;
use aaut::{Address, Element};
use common::*;

/// `f` moves every point; `g` has the same elliptic part and a conjugate
/// hyperbolic part, but fixes the ball `01`.
fn full_support_pair() -> (Element, Element) {
    (
        el(p(2, 2), "00->000, 010->001, 011->01, 10->11, 11->10"),
        el(p(2, 2), "000->0000, 0010->0001, 0011->001, 01->01, 10->11, 11->10"),
    )
}

#[test]
fn v_examples() {
    assert!(conjugate_in_v(&x(), &x()).unwrap().conjugate);
    let v = conjugate_in_v(&x(), &av()).unwrap();
    assert!(!v.conjugate);
    assert_eq!(v.evidence.kind(), "rotation-mismatch");
    assert_eq!(v.arena, Arena::V);
    // Settled by the oracle: both sides reduce to one free loop of value 2.
    assert!(conjugate_in_v(&swap(), &double_swap()).unwrap().conjugate);
    assert!(brute_force_conjugator(&swap(), &double_swap(), 3).unwrap().is_some());
}

#[test]
fn av_is_x_twisted_below_the_attractor() {
    let twist = el(p(2, 2), "000->001, 001->000, 01->01, 1->1");
    assert_eq!(twist.compose(&x()).unwrap(), av());
}

#[test]
fn hyperbolic_examples() {
    assert!(conjugate_hyperbolic(&x(), &av()).unwrap().conjugate);
    let x2 = x().compose(&x()).unwrap();
    assert!(!conjugate_hyperbolic(&x(), &x2).unwrap().conjugate);
    assert!(conjugate_hyperbolic(&x(), &swap()).is_err());
}

fn complement(w: &Address) -> Address {
    Address::new(w.digits().iter().map(|&b| 1 - b).collect())
}

#[test]
fn x_and_its_inverse() {
    // Conjugate by the bit-flip automorphism, which is not in V.
    let (g, h) = (x(), x().inverse());
    for len in 3..8u32 {
        for bits in 0..(1u32 << len) {
            let w = Address::new((0..len).map(|i| ((bits >> i) & 1) as u8).collect());
            assert_eq!(complement(&g.act(&complement(&w)).unwrap()), h.act(&w).unwrap());
        }
    }
    assert!(conjugate_hyperbolic(&g, &h).unwrap().conjugate);
    assert!(conjugate(&g, &h).unwrap().conjugate);
    assert!(!conjugate_in_v(&g, &h).unwrap().conjugate);
    assert!(brute_force_conjugator(&g, &h, 3).unwrap().is_none());
}

#[test]
fn full_decision_examples() {
    let v = conjugate(&x(), &av()).unwrap();
    assert!(v.conjugate);
    assert_eq!(v.arena, Arena::AAut);
    let (f, g) = full_support_pair();
    let (fe, fh) = aaut::dynamics::eh_decompose(&f).unwrap();
    let (ge, gh) = aaut::dynamics::eh_decompose(&g).unwrap();
    assert_eq!(fe, ge);
    assert!(conjugate_hyperbolic(&fh, &gh).unwrap().conjugate);
    let v = conjugate(&f, &g).unwrap();
    assert!(!v.conjugate);
    assert_eq!(v.evidence, Evidence::SupportParity { left: true, right: false });
    assert!(brute_force_conjugator(&f, &g, 3).unwrap().is_none());
}

#[test]
fn open_classes() {
    assert!(has_open_conjugacy_class(&x()).unwrap());
    assert!(!has_open_conjugacy_class(&id22()).unwrap());
    assert!(!has_open_conjugacy_class(&g1()).unwrap());
    assert!(!has_open_conjugacy_class(&swap()).unwrap());
}

#[test]
fn oracle_examples() {
    let g = x();
    let w = brute_force_conjugator(&g, &g, 1).unwrap().unwrap();
    assert!(w.conjugator.is_identity());
    assert!(brute_force_conjugator(&swap(), &id22(), 3).unwrap().is_none());
    assert!(brute_force_conjugator(&g, &g, 0).is_err());
    assert!(brute_force_conjugator(&g, &Element::identity(p(3, 3)), 1).is_err());
}

#[test]
fn oracle_order_is_by_text() {
    let all = enumerate_elements(p(2, 2), 2);
    let texts: Vec<String> = all.iter().map(aaut::format::write_element).collect();
    let mut sorted = texts.clone();
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    assert_eq!(texts, sorted);
    // One caret: the k! permutations of the root children.
    assert_eq!(enumerate_elements(p(2, 2), 1).len(), 2);
    assert_eq!(enumerate_elements(p(2, 3), 1).len(), 6);
    assert_eq!(trees_with_carets(p(2, 2), 3).len(), 5);
    assert_eq!(trees_with_carets(p(3, 3), 2).len(), 3);
}

#[test]
fn orbit_agrees_with_find() {
    let search = ConjugatorSearch::new(p(2, 2), 2);
    let corpus = enumerate_elements(p(2, 2), 2);
    for g in corpus.iter().take(12) {
        let orbit = search.orbit(g).unwrap();
        for h in &corpus {
            let found = search.find(g, h).unwrap();
            assert_eq!(found.as_ref().map(|w| &w.conjugator), orbit.get(h).map(|&i| &search.candidates()[i]));
        }
    }
}

#[test]
fn evidence_reverifies() {
    for seed in 0..40u64 {
        let g = seeded_element(p(2, 2), 1 + seed as usize % 5, seed);
        let h = seeded_element(p(2, 2), 1 + (seed as usize / 5) % 5, 500 + seed);
        let v = conjugate(&g, &h).unwrap();
        match &v.evidence {
            Evidence::SupportParity { left, right } => {
                assert_eq!(*left, aaut::dynamics::support_is_full(&g).unwrap());
                assert_eq!(*right, aaut::dynamics::support_is_full(&h).unwrap());
                assert_ne!(left, right);
            }
            Evidence::EllipticLabelSet { left, right } => assert_ne!(left, right),
            Evidence::EllipticResidues { left, right } => assert_ne!(left, right),
            Evidence::DiagramIso { mapping: None } => assert!(!v.conjugate),
            Evidence::Invariants { .. } => assert!(v.conjugate),
            other => panic!("unexpected evidence {other:?}"),
        }
        if conjugate_in_v(&g, &h).unwrap().conjugate {
            assert!(v.conjugate, "seed {seed}");
        }
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["evidence"]["kind"], v.evidence.kind());
    }
}

#[test]
fn conjugate_is_an_equivalence_on_samples() {
    for seed in 0..30u64 {
        let g = seeded_element(p(2, 2), 1 + seed as usize % 5, seed);
        let a = seeded_element(p(2, 2), 1 + seed as usize % 3, 100 + seed);
        let b = seeded_element(p(2, 2), 1 + seed as usize % 4, 200 + seed);
        let h = g.conjugate_by(&a).unwrap();
        let k = h.conjugate_by(&b).unwrap();
        assert!(conjugate(&g, &g).unwrap().conjugate);
        assert!(conjugate(&g, &h).unwrap().conjugate && conjugate(&h, &g).unwrap().conjugate);
        assert!(conjugate(&g, &k).unwrap().conjugate, "seed {seed}");
        assert!(conjugate_in_v(&g, &k).unwrap().conjugate, "seed {seed}");
    }
}
