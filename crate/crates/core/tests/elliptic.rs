mod common;

use std::collections::{BTreeMap, BTreeSet};

use aaut::conjugacy::brute_force_conjugator;
use aaut::elliptic::*;
use aaut::random::{rng, seeded_element};
use common::*;

fn labels(g: &aaut::Element) -> Vec<(usize, usize)> {
    orbital_type(g).unwrap().components.iter().map(|c| (c.label, c.multiplicity)).collect()
}

#[test]
fn orbital_type_examples() {
    assert_eq!(labels(&swap()), vec![(2, 1)]);
    assert_eq!(labels(&id22()), vec![(1, 2)]);
    assert_eq!(labels(&double_swap()), vec![(2, 2)]);
    assert!(orbital_type(&x()).is_err());
    let json = serde_json::to_string(&orbital_type(&swap()).unwrap()).unwrap();
    assert_eq!(json, r#"{"components":[{"label":2,"multiplicity":1}]}"#);
    assert!(orbital_type(&double_swap()).unwrap().to_dot().contains("2×2"));
}

#[test]
fn bot_examples() {
    let b = bot_invariant(&orbital_type(&swap()).unwrap());
    assert_eq!(b.label_set, BTreeSet::from([2]));
    assert_eq!(b.residues, BTreeMap::from([(2, 0)]));
    let id33 = aaut::Element::identity(p(3, 3));
    assert_eq!(bot_invariant(&orbital_type(&id33).unwrap()).residues, BTreeMap::from([(1, 1)]));
    let g = el(p(3, 3), "0->1, 1->0, 2->2");
    assert_eq!(bot_invariant(&orbital_type(&g).unwrap()).residues, BTreeMap::from([(1, 1), (2, 1)]));
}

#[test]
fn swap_and_double_swap_are_conjugate() {
    assert!(elliptic_conjugate(&swap(), &double_swap()).unwrap());
    let w = brute_force_conjugator(&swap(), &double_swap(), 3).unwrap().expect("a witness");
    assert!(w.check(&swap(), &double_swap()));
}

#[test]
fn label_set_counterexample() {
    let h = el(p(2, 2), "00->01, 01->00, 1->1");
    assert!(!elliptic_conjugate(&swap(), &h).unwrap());
    assert!(brute_force_conjugator(&swap(), &h, 3).unwrap().is_none());
}

#[test]
fn residue_counterexample() {
    let g = el(p(3, 3), "0->1, 1->0, 2->2");
    let h = el(p(3, 3), "0->1, 1->0, 20->21, 21->20, 22->22");
    assert_eq!(bot_invariant(&orbital_type(&g).unwrap()).label_set, bot_invariant(&orbital_type(&h).unwrap()).label_set);
    assert!(!elliptic_conjugate(&g, &h).unwrap());
    assert!(brute_force_conjugator(&g, &h, 2).unwrap().is_none());
}

#[test]
fn power_of_two_test() {
    assert!(is_autt_conjugate_elliptic_t22(&swap()).unwrap());
    assert!(is_autt_conjugate_elliptic_t22(&id22()).unwrap());
    let three = el(p(2, 2), "000->001, 001->01, 01->000, 1->1");
    assert_eq!(labels(&three), vec![(1, 1), (3, 1)]);
    assert!(!is_autt_conjugate_elliptic_t22(&three).unwrap());
    assert!(is_autt_conjugate_elliptic_t22(&aaut::Element::identity(p(3, 3))).is_err());
}

#[test]
fn d_number_predicate() {
    let t = |d: usize, l: &[usize]| {
        OrbitalType::from_labels(p(d, d), &l.iter().map(|&n| (n, 1)).collect())
    };
    assert!(is_autt_orbital_type(&t(3, &[6])));
    assert!(!is_autt_orbital_type(&t(2, &[4])));
    assert!(is_autt_orbital_type(&t(2, &[1])));
    assert!(!is_autt_orbital_type(&t(3, &[5])));
    assert!(!is_autt_orbital_type(&t(3, &[9])));
}

#[test]
fn trimming_keeps_the_invariant() {
    for d in [2, 3, 4] {
        let t = OrbitalType::from_labels(p(d, d), &BTreeMap::from([(1, 2), (2, 1), (3, 4)]));
        let b = bot_invariant(&t);
        for label in [1, 2, 3] {
            let trimmed = t.trim(label).unwrap();
            assert_eq!(trimmed.weight(), t.weight() + label * (d - 1));
            assert_eq!(bot_invariant(&trimmed), b);
        }
        assert!(t.trim(5).is_none());
    }
}

#[test]
fn weight_matches_the_leaf_count() {
    let mut r = rng(11);
    for params in [p(2, 2), p(3, 3), p(2, 3), p(4, 2)] {
        for c in 1..6 {
            let g = random_elliptic(params, c, &mut r);
            let t = orbital_type(&g).unwrap();
            let leaves = t.source.as_ref().unwrap().domain().leaf_count();
            assert_eq!(t.weight(), leaves);
            assert_eq!(leaves % (params.d - 1), params.k % (params.d - 1));
        }
    }
}

#[test]
fn conjugation_invariance_and_equivalence() {
    let mut r = rng(12);
    for i in 0..40 {
        let params = if i % 2 == 0 { p(2, 2) } else { p(3, 3) };
        let g = random_elliptic(params, 1 + i % 5, &mut r);
        let a = seeded_element(params, 1 + i % 4, i as u64);
        let h = g.conjugate_by(&a).unwrap();
        assert!(elliptic_conjugate(&g, &h).unwrap());
        assert!(elliptic_conjugate(&h, &g).unwrap());
        let k = h.conjugate_by(&seeded_element(params, 2, 1000 + i as u64)).unwrap();
        assert!(elliptic_conjugate(&g, &k).unwrap());
    }
}

#[test]
fn witness_implies_same_invariant_on_small_elliptics() {
    use aaut::conjugacy::{enumerate_elements, ConjugatorSearch};
    let params = p(2, 2);
    let corpus: Vec<_> = enumerate_elements(params, 3)
        .into_iter()
        .filter(|g| aaut::dynamics::is_elliptic(g).unwrap())
        .collect();
    let search = ConjugatorSearch::new(params, 3);
    for g in &corpus {
        let orbit = search.orbit(g).unwrap();
        for h in &corpus {
            if orbit.contains_key(h) {
                assert!(elliptic_conjugate(g, h).unwrap(), "{g} ~ {h}");
            }
        }
    }
}
