//! Turning a tree pair into a revealing one and listing its maximal chains.

use aaut::format::write_pair;
use aaut::random::seeded_element;
use aaut::{make_revealing, TreeParams};

fn main() -> aaut::Result<()> {
    let q = TreeParams::new(3, 2)?;
    let g = seeded_element(q, 6, 11);
    println!("input pair, revealing = {}", g.pair().is_revealing());
    print!("{}", write_pair(g.pair()));

    let r = make_revealing(&g)?;
    println!("\nrevealing pair ({} leaves)", r.domain().leaf_count());
    print!("{}", write_pair(&r));
    for c in r.chains() {
        println!("{:?} chain of {} leaves: {} .. {}", c.kind, c.n(), c.first(), c.last());
    }
    assert_eq!(r.canonicalize(), g);
    Ok(())
}
