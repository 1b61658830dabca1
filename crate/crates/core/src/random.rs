//! Seeded random elements.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`). A
//! tree with `n` carets starts from the bare root; the first insertion is the
//! root caret and each later one splits a leaf chosen uniformly from the
//! shortlex-sorted leaf list. The range tree is grown independently with the
//! same `n`, and the leaf bijection is a uniform shuffle of the range leaves.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::{Element, TreePair};
use crate::tree::{CompleteTree, TreeParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A complete tree with exactly `carets` carets, the root caret included.
pub fn random_tree<R: Rng>(params: TreeParams, carets: usize, rng: &mut R) -> CompleteTree {
    assert!(carets >= 1, "a complete tree has at least the root caret");
    let mut t = CompleteTree::trivial(params);
    for _ in 1..carets {
        let leaf = t.leaves()[rng.gen_range(0..t.leaf_count())].clone();
        t = t.split_leaf(&leaf).expect("chosen from the leaves");
    }
    t
}

/// A random tree pair whose trees both have `carets` carets.
pub fn random_pair<R: Rng>(params: TreeParams, carets: usize, rng: &mut R) -> TreePair {
    let domain = random_tree(params, carets, rng);
    let range = random_tree(params, carets, rng);
    let mut targets = range.leaves().to_vec();
    targets.shuffle(rng);
    let pairs = domain.leaves().iter().cloned().zip(targets).collect();
    TreePair::new(params, pairs).expect("equal leaf counts")
}

pub fn random_element<R: Rng>(params: TreeParams, carets: usize, rng: &mut R) -> Element {
    random_pair(params, carets, rng).canonicalize()
}

/// The element produced by `aaut random`.
pub fn seeded_element(params: TreeParams, carets: usize, seed: u64) -> Element {
    random_element(params, carets, &mut rng(seed))
}
