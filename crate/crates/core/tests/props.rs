mod common;

use aaut::conjugacy::{conjugate, conjugate_in_v};
use aaut::dynamics::{dynamics_report, eh_decompose};
use aaut::format::{parse_element, write_element};
use aaut::random::{random_tree, rng, seeded_element};
use aaut::strand::*;
use aaut::{make_revealing, Address, ClopenSet, Element, TreeParams};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = TreeParams> {
    prop_oneof![
        Just(TreeParams::new(2, 2).unwrap()),
        Just(TreeParams::new(3, 3).unwrap()),
        Just(TreeParams::new(2, 3).unwrap()),
        Just(TreeParams::new(3, 2).unwrap()),
        Just(TreeParams::new(4, 1).unwrap()),
    ]
}

fn element() -> impl Strategy<Value = Element> {
    (params(), 1usize..9, any::<u64>()).prop_map(|(p, c, s)| seeded_element(p, c, s))
}

fn elements(n: usize) -> impl Strategy<Value = Vec<Element>> {
    (params(), proptest::collection::vec((1usize..7, any::<u64>()), n))
        .prop_map(|(p, v)| v.into_iter().map(|(c, s)| seeded_element(p, c, s)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leaf_count_residue(p in params(), c in 1usize..15, seed: u64) {
        let t = random_tree(p, c, &mut rng(seed));
        prop_assert_eq!(t.leaf_count() % (p.d - 1), p.k % (p.d - 1));
        prop_assert_eq!(t.leaf_count(), p.leaves_for_carets(c));
    }

    #[test]
    fn subtract_then_union(p in params(), c1 in 1usize..8, c2 in 1usize..8, seed: u64) {
        let mut r = rng(seed);
        let (a, b) = (random_tree(p, c1, &mut r), random_tree(p, c2, &mut r));
        let mut glued = b.clone();
        for comp in a.subtract(&b).unwrap() {
            prop_assert!(b.is_leaf(&comp.root));
            glued = glued.glue(&comp);
        }
        prop_assert_eq!(glued, a.union(&b).unwrap());
        prop_assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
        prop_assert_eq!(a.union(&a).unwrap(), a);
    }

    #[test]
    fn ball_count_residue_survives_refinement(p in params(), c in 1usize..8, seed: u64, pick: u64) {
        let mut r = rng(seed);
        let t = random_tree(p, c, &mut r);
        let leaves = t.leaves();
        let chosen: Vec<Address> = leaves.iter().enumerate().filter(|(i, _)| pick >> (i % 64) & 1 == 1).map(|x| x.1.clone()).collect();
        let s = ClopenSet::new(p, chosen.clone()).unwrap();
        let m = p.d - 1;
        prop_assert_eq!(s.ball_count_residue(), chosen.len() % m);
        if let Some(first) = chosen.first() {
            let mut refined: Vec<Address> = chosen[1..].to_vec();
            refined.extend(p.children(first));
            let s2 = ClopenSet::new(p, refined).unwrap();
            prop_assert_eq!(s2.ball_count_residue(), s.ball_count_residue());
            prop_assert_eq!(s2, s);
        }
    }

    #[test]
    fn group_axioms(v in elements(3)) {
        let (g, h, k) = (&v[0], &v[1], &v[2]);
        let id = Element::identity(g.params());
        prop_assert_eq!(g.compose(&h.compose(k).unwrap()).unwrap(), g.compose(h).unwrap().compose(k).unwrap());
        prop_assert_eq!(g.compose(&g.inverse()).unwrap(), id.clone());
        prop_assert_eq!(id.compose(g).unwrap(), g.clone());
        prop_assert_eq!(g.inverse().inverse(), g.clone());
        prop_assert_eq!(g.pair().canonicalize(), g.clone());
    }

    #[test]
    fn conjugation_contracts_once(v in elements(2)) {
        let (g, a) = (&v[0], &v[1]);
        let slow = a.compose(&g.compose(&a.inverse()).unwrap()).unwrap();
        prop_assert_eq!(g.conjugate_by(a).unwrap(), slow.clone());
        prop_assert_eq!(g.conjugate_with(a, &a.inverse()).unwrap(), slow);
    }

    #[test]
    fn act_is_equivariant(v in elements(2), tail in proptest::collection::vec(0u8..2, 14)) {
        let (g, h) = (&v[0], &v[1]);
        let p = g.params();
        let mut w = vec![tail[0] % p.k as u8];
        w.extend(tail[1..].iter().map(|&x| x % p.d as u8));
        // Deep enough to sit below every leaf involved.
        let w = Address::new(w).concat(&[0; 16]);
        let gh = g.compose(h).unwrap();
        prop_assert_eq!(gh.act(&w).unwrap(), g.act(&h.act(&w).unwrap()).unwrap());
    }

    #[test]
    fn chains_partition_the_leaves(g in element()) {
        let pair = make_revealing(&g).unwrap();
        for p in [g.pair(), &pair] {
            let mut seen: Vec<Address> = p.chains().into_iter().flat_map(|c| c.vertices).collect();
            seen.sort();
            let mut want: Vec<Address> = p.domain().leaves().iter().chain(p.range().leaves()).cloned().collect();
            want.sort();
            want.dedup();
            prop_assert_eq!(seen, want);
        }
    }

    #[test]
    fn revealing_pairs(g in element()) {
        let pair = make_revealing(&g).unwrap();
        prop_assert!(pair.is_revealing());
        prop_assert_eq!(pair.canonicalize(), g.clone());
        prop_assert!(g.pair().domain().is_subtree_of(pair.domain()));
    }

    #[test]
    fn rolling_preserves_the_element(g in element()) {
        let p = g.pair();
        let (rep, att) = p.fake_components();
        let chains = p.chains();
        if let Some(t) = att.first() {
            let c = chains.iter().find(|c| c.first() == &t.root).unwrap();
            prop_assert_eq!(p.roll(c, t, aaut::Direction::Forward).unwrap().canonicalize(), g.clone());
        }
        if let Some(t) = rep.first() {
            let c = chains.iter().find(|c| c.last() == &t.root && c.kind != aaut::ChainKind::Periodic).unwrap();
            prop_assert_eq!(p.roll(c, t, aaut::Direction::Backward).unwrap().canonicalize(), g.clone());
        }
    }

    #[test]
    fn eh_recomposes(g in element()) {
        let (e, h) = eh_decompose(&g).unwrap();
        prop_assert_eq!(e.compose(&h).unwrap(), g);
    }

    #[test]
    fn dynamics_is_conjugation_invariant(v in elements(2)) {
        let (g, a) = (&v[0], &v[1]);
        let h = g.conjugate_by(a).unwrap();
        let (rg, rh) = (dynamics_report(g).unwrap(), dynamics_report(&h).unwrap());
        prop_assert_eq!(rg.attractor_data(), rh.attractor_data());
        prop_assert_eq!(rg.repeller_data(), rh.repeller_data());
        prop_assert_eq!(rg.support_full, rh.support_full);
        prop_assert!(conjugate(g, &h).unwrap().conjugate);
        prop_assert!(conjugate_in_v(g, &h).unwrap().conjugate);
    }

    #[test]
    fn format_round_trip(g in element()) {
        prop_assert_eq!(parse_element(&write_element(&g)).unwrap(), g);
    }

    #[test]
    fn reduction_is_confluent(g in element(), s1: u64, s2: u64) {
        let b = basic_diagram(&make_revealing(&g).unwrap());
        let one = reduce_shuffled(&b, &mut rng(s1));
        let two = reduce_shuffled(&b, &mut rng(s2));
        prop_assert!(iso(&one, &two, true).is_some());
        prop_assert!(iso(&one, &reduce(&b), true).is_some());
    }

    #[test]
    fn coboundaries_are_invisible(g in element(), seed: u64) {
        let dgm = star_reduce(&basic_diagram(&make_revealing(&g).unwrap()));
        let mut r = rng(seed);
        let shifts: Vec<i64> = (0..dgm.vertex_count()).map(|_| rand::Rng::gen_range(&mut r, -3..4)).collect();
        let mut moved = dgm.clone();
        moved.add_coboundary(&|v| shifts[v]);
        let inv = |d: &StrandDiagram| {
            let mut v: Vec<_> = loops(d).unwrap().into_iter().map(|l| (l.kind, l.length, l.class_value)).collect();
            v.sort();
            v
        };
        prop_assert_eq!(inv(&moved), inv(&dgm));
        prop_assert!(iso(&moved, &dgm, true).is_some());
        if dgm.vertex_count() > 0 {
            let rep = admissible_representative(&moved).unwrap();
            prop_assert!(iso(&rep, &dgm, true).is_some());
        }
    }

    #[test]
    fn reductions_keep_admissibility(g in element()) {
        let b = basic_diagram(g.pair());
        let r = reduce(&b);
        let t = r.total_gamma() - g.params().k as i64;
        prop_assert_eq!(t.rem_euclid(g.params().d as i64 - 1), 0);
        if r.vertex_count() > 0 {
            prop_assert!(admissible_representative(&r).is_ok());
        }
    }

    #[test]
    fn diagram_round_trip(g in element()) {
        let dgm = star_reduce(&basic_diagram(&make_revealing(&g).unwrap()));
        let back = diagram_to_revealing_pair(&dgm, g.params()).unwrap();
        prop_assert!(back.is_revealing());
        prop_assert!(iso(&star_reduce(&basic_diagram(&back)), &dgm, true).is_some());
    }

    #[test]
    fn diagram_dynamics_match(g in element()) {
        let dgm = star_reduce(&basic_diagram(&make_revealing(&g).unwrap()));
        let dd = dynamics_from_diagram(&dgm).unwrap();
        let r = dynamics_report(&g).unwrap();
        prop_assert_eq!(dd.attractors, r.attractor_data());
        prop_assert_eq!(dd.repellers, r.repeller_data());
        prop_assert_eq!(dd.stable_ball_residue, r.stable_region.ball_count_residue());
    }
}
