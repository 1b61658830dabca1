//! Seeded random elements and whether their conjugacy classes are open.

use aaut::conjugacy::has_open_conjugacy_class;
use aaut::dynamics::{is_elliptic, is_hyperbolic};
use aaut::random::seeded_element;
use aaut::TreeParams;

fn main() -> aaut::Result<()> {
    let q = TreeParams::new(2, 2)?;
    for seed in 0..8 {
        let g = seeded_element(q, 4, seed);
        println!(
            "seed {seed}: elliptic {:<5} hyperbolic {:<5} open {:<5} {g}",
            is_elliptic(&g)?,
            is_hyperbolic(&g)?,
            has_open_conjugacy_class(&g)?
        );
    }
    Ok(())
}
